"""Heat content of intervals and boxes, and the torsion bounds built on it.

The torsional rigidity is the time integral of the heat content, and heat
contents multiply over Cartesian products.  Everything that needs an actual
heat content here reduces to intervals, whose heat content is known as a
series in two dual forms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

from .errors import DomainError, NumericError
from .specfun import bessel_first_zero, bessel_order_zero, gamma_fn

_SQRT_PI = math.sqrt(math.pi)


# ---------------------------------------------------------------------------
# interval heat content


def _q_eigen(a, t, tol):
    # (8a/pi^2) sum_{k odd} k^-2 exp(-t pi^2 k^2 / a^2)
    s = t * math.pi**2 / a**2
    total = 0.0
    k = 1
    while True:
        total += math.exp(-s * k * k) / (k * k)
        k += 2
        # remaining terms are bounded by a geometric series in exp(-4 s k)
        bound = math.exp(-s * k * k) / (k * k) / (1.0 - math.exp(-4.0 * s * k))
        if 8 * a / math.pi**2 * bound <= tol:
            return 8.0 * a / math.pi**2 * total


def _image_integral(c, t):
    # int_0^t tau^{-1/2} exp(-c/tau) dtau
    return 2.0 * math.sqrt(t) * math.exp(-c / t) - 2.0 * math.sqrt(math.pi * c) * math.erfc(
        math.sqrt(c / t)
    )


def _q_short_time(a, t, tol):
    # a - 4 sqrt(t/pi) plus the exponentially small overlap of the two
    # boundary layers, obtained from the eigen series by Poisson summation
    total = 0.0
    k = 1
    while True:
        c = (k * a) ** 2
        term = _image_integral(c, t) - 0.5 * _image_integral(c / 4.0, t)
        total += term
        # terms beyond k are dominated by 2 sqrt(t) exp(-(k+1)^2 a^2 / 4t) each
        nxt = 4.0 * math.sqrt(t) * math.exp(-((k + 1) * a) ** 2 / (4.0 * t))
        if 8.0 / _SQRT_PI * nxt <= tol or k > 50:
            break
        k += 1
    return a - 4.0 * math.sqrt(t / math.pi) - 8.0 / _SQRT_PI * total


def q_interval(a: float, t: float, tol: float = 1e-16) -> float:
    """Heat content Q_(0,a)(t) of an interval held at zero on its ends.

    For ``t pi^2 / a^2 >= 1`` the eigenfunction series is summed; for shorter
    times the Poisson-dual form ``a - 4 sqrt(t/pi) + ...`` is used, whose
    correction terms decay like ``exp(-k^2 a^2 / 4t)``.  Either way the
    truncation error is below ``tol`` (absolute).
    """
    if not a > 0:
        raise DomainError(f"interval length must be positive, got {a!r}")
    if not t >= 0:
        raise DomainError(f"time must be non-negative, got {t!r}")
    if t == 0:
        return float(a)
    tol = max(tol, 1e-300)
    if t * math.pi**2 >= a**2:
        return _q_eigen(a, t, tol)
    return _q_short_time(a, t, tol)


@dataclass(frozen=True)
class HeatContentCurve:
    """Heat content t -> Q(t) with the constants bracketing its decay.

    ``floor * exp(-t lambda1) <= Q(t) <= measure * exp(-t lambda1)``.
    """

    evaluator: Callable[[float], float]
    measure: float
    lambda1: float
    floor: float

    def __call__(self, t: float) -> float:
        return self.evaluator(t)

    def __mul__(self, other: "HeatContentCurve") -> "HeatContentCurve":
        f, g = self.evaluator, other.evaluator
        return HeatContentCurve(
            evaluator=lambda t: f(t) * g(t),
            measure=self.measure * other.measure,
            lambda1=self.lambda1 + other.lambda1,
            floor=self.floor * other.floor,
        )


def interval_curve(a: float) -> HeatContentCurve:
    tol = 1e-17 * a
    return HeatContentCurve(
        evaluator=lambda t: q_interval(a, t, tol),
        measure=a,
        lambda1=math.pi**2 / a**2,
        floor=8.0 * a / math.pi**2,
    )


def box_curve(sides: Sequence[float]) -> HeatContentCurve:
    curve = interval_curve(sides[0])
    for a in sides[1:]:
        curve = curve * interval_curve(a)
    return curve


# ---------------------------------------------------------------------------
# quadrature


def adaptive_simpson(f, lo, hi, tol, max_intervals=200_000):
    """Integrate ``f`` over [lo, hi] to absolute accuracy ``tol``.

    Each accepted panel carries the Richardson-corrected Simpson estimate;
    panels are split until the local error estimate is within their share of
    the tolerance.
    """
    f_lo, f_mid, f_hi = f(lo), f(0.5 * (lo + hi)), f(hi)
    whole = (hi - lo) / 6.0 * (f_lo + 4 * f_mid + f_hi)
    stack = [(lo, hi, f_lo, f_mid, f_hi, whole, tol)]
    parts = []
    count = 0
    while stack:
        a, b, fa, fm, fb, S, eps = stack.pop()
        m = 0.5 * (a + b)
        lm, rm = 0.5 * (a + m), 0.5 * (m + b)
        flm, frm = f(lm), f(rm)
        left = (m - a) / 6.0 * (fa + 4 * flm + fm)
        right = (b - m) / 6.0 * (fm + 4 * frm + fb)
        delta = left + right - S
        count += 1
        if abs(delta) <= 15.0 * eps or b - a < 1e-12 * (hi - lo):
            parts.append(left + right + delta / 15.0)
        elif count > max_intervals:
            raise NumericError("adaptive Simpson quadrature did not converge")
        else:
            stack.append((a, m, fa, flm, fm, left, 0.5 * eps))
            stack.append((m, b, fm, frm, fb, right, 0.5 * eps))
    return math.fsum(parts)


def heat_torsion(curve: HeatContentCurve, tol: float = 1e-10) -> float:
    """T = int_0^inf Q(t) dt, to relative accuracy ``tol``.

    The integral is cut at the time where the exponential envelope
    ``measure * exp(-t lambda1)`` leaves a tail below half the budget, and
    the finite part is integrated in s = sqrt(t), which removes the sqrt(t)
    boundary-layer behaviour of Q at small times.
    """
    lam, floor = curve.lambda1, curve.floor
    t_low = floor / lam  # lower bound on T from the floor envelope
    budget = tol * t_low
    t_max = math.log(2.0 * curve.measure / (lam * budget)) / lam
    integral = adaptive_simpson(
        lambda s: 2.0 * s * curve(s * s), 0.0, math.sqrt(t_max), 0.5 * budget
    )
    tail = curve.measure * math.exp(-t_max * lam) / lam
    return integral + 0.5 * tail


def torsion_box_via_heat(sides: Sequence[float], tol: float = 1e-10) -> float:
    """Torsional rigidity of a box from the product of interval heat contents."""
    if not sides or any(not L > 0 for L in sides):
        raise DomainError(f"box sides must be positive, got {sides!r}")
    if len(sides) == 1:
        return sides[0] ** 3 / 12.0
    return heat_torsion(box_curve(list(sides)), tol)


def torsion_rect_via_heat(a: float, b: float, tol: float = 1e-10) -> float:
    return heat_torsion(box_curve([a, b]), tol)


# ---------------------------------------------------------------------------
# product bounds


def product_torsion_upper(t1: float, m2: float) -> float:
    """T(M1 x M2) <= T(M1) |M2|."""
    return t1 * m2


def c_constant(d2: int) -> float:
    """sqrt(pi) d2 Gamma((d2+1)/2) / Gamma((d2+2)/2)."""
    if int(d2) != d2 or not 1 <= d2 <= 30:
        raise DomainError(f"d2 must be an integer in [1, 30], got {d2!r}")
    return _SQRT_PI * d2 * gamma_fn((d2 + 1) / 2) / gamma_fn((d2 + 2) / 2)


def product_torsion_lower(
    t1: float, lambda1_1: float, m1: float, d2: int, m2: float, surf2: float
) -> float:
    """Lower bound on T(M1 x M2) for bounded convex M2 of dimension d2.

    ``T(M1)|M2| - C_{d2} lambda1(M1)^(-3/2) |M1| H^{d2-1}(boundary of M2)``.
    May be negative when M1 is not thin compared with M2.
    """
    return t1 * m2 - c_constant(d2) * lambda1_1 ** -1.5 * m1 * surf2


# ---------------------------------------------------------------------------
# spectral lower bounds


def _eigsum_prefactor(d):
    return (2.0 / (d + 2)) * (4.0 * math.pi * d / (d + 2)) ** (d / 2)


def eigsum_lower_bound(d: int, eigenvalues: Sequence[float]) -> float:
    """Torsion lower bound from any leading part of the Dirichlet spectrum."""
    eigenvalues = list(eigenvalues)
    if not eigenvalues or any(not lam > 0 for lam in eigenvalues):
        raise DomainError("eigenvalues must be a non-empty sequence of positive reals")
    if any(b < a for a, b in zip(eigenvalues, eigenvalues[1:])):
        raise DomainError("eigenvalues must be in ascending order")
    return _eigsum_prefactor(d) * math.fsum(lam ** (-(d + 2) / 2) for lam in eigenvalues)


def ab_bound(d: int) -> float:
    """Lower bound on T lambda1^((d+2)/2) from the eigenvalue sum and the
    extremal ratio lambda1/lambda2 of the ball."""
    if int(d) != d or not 2 <= d <= 30:
        raise DomainError(f"d must be an integer in [2, 30], got {d!r}")
    ratio = (bessel_order_zero(d) / bessel_first_zero(d / 2)) ** 2
    return _eigsum_prefactor(d) * gamma_fn(1 + d / 2) * (1 + ratio ** ((d + 2) / 2))


def disk_eigenvalues(R: float, count: int) -> list[float]:
    """The ``count`` smallest Dirichlet eigenvalues of a disk of radius R.

    Eigenvalues are j_{m,k}^2 / R^2, with multiplicity 2 for m >= 1.
    """
    from .specfun import bessel_zeros

    if count < 1:
        raise DomainError("count must be positive")
    cutoff = 2.0 * math.sqrt(count) + 6.0
    while True:
        found = []
        m = 0
        while m <= 25 and bessel_first_zero(m) < cutoff:
            n = 1
            while bessel_zeros(m, n)[-1] < cutoff:
                n += 1
            zs = [z for z in bessel_zeros(m, n) if z < cutoff]
            found.extend(z for z in zs for _ in range(1 if m == 0 else 2))
            m += 1
        if len(found) >= count:
            found.sort()
            return [z * z / R**2 for z in found[:count]]
        cutoff *= 1.5
