"""Independent reference computations used only by the tests."""

import math

import numpy as np
from scipy import integrate, special


def rect_torsion_double_series(a, b, K=2001):
    """Direct double sum over odd k, l <= K of the rectangle torsion series.

    Returns (value, tail_bound).  Dropping k > K costs at most
    prefactor * (pi^2/8) * a^2 / (6 K^3), and likewise for l with b in place of a.
    """
    k = np.arange(1, K + 1, 2, dtype=float)
    kk, ll = np.meshgrid(k, k, indexing="ij")
    terms = 1.0 / (kk**2 * ll**2 * (kk**2 / a**2 + ll**2 / b**2))
    pref = 64 * a * b / math.pi**6
    value = pref * math.fsum(np.sort(terms.ravel()))
    tail = pref * (math.pi**2 / 8) * (a**2 + b**2) / (6 * K**3)
    return value, tail


def ball_lambda1_scipy(d, R):
    nu = d / 2 - 1
    if nu < 0:
        return (math.pi / 2) ** 2 / R**2
    return special.jn_zeros(int(nu), 1)[0] ** 2 / R**2 if nu == int(nu) else _jv_zero(nu) ** 2 / R**2


def _jv_zero(nu):
    from scipy.optimize import brentq

    x = max(nu, 0.5)
    while special.jv(nu, x) * special.jv(nu, x + 0.1) > 0:
        x += 0.1
    return brentq(lambda t: special.jv(nu, t), x, x + 0.1, xtol=1e-15)


def c_constant_dblquad(d2):
    """C_{d2} = 2 d2 omega_{d2} int_0^inf e^{-t} (4 pi t)^{-d2/2} int_0^inf r^{d2} e^{-r^2/4t} dr dt."""
    omega = math.pi ** (d2 / 2) / math.gamma(1 + d2 / 2)
    # substitute r = 2 sqrt(t) s to keep the inner integrand on a fixed scale
    val, _ = integrate.dblquad(
        lambda s, t: math.exp(-t) * (4 * math.pi * t) ** (-d2 / 2) * (2 * math.sqrt(t)) ** (d2 + 1)
        * s**d2 * math.exp(-s * s),
        0, math.inf, 0, math.inf, epsabs=0, epsrel=1e-12,
    )
    return 2 * d2 * omega * val


def disk_union_torsion(R):
    """T of two disks with pi(R^2 + r^2) = 1."""
    return (2 * math.pi**2 * R**4 - 2 * math.pi * R**2 + 1) / (8 * math.pi)
