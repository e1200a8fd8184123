import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import c_constant_dblquad
from spectral_torsion import exact, heat
from spectral_torsion.errors import DomainError

J01 = 2.404825557695773
J11 = 3.831705970207512


def q_eigen_reference(a, t, terms=20001):
    k = np.arange(1, terms + 1, 2, dtype=float)
    return 8 * a / math.pi**2 * math.fsum(np.exp(-t * math.pi**2 * k**2 / a**2) / k**2)


def test_q_examples():
    assert heat.q_interval(1, 0) == 1
    # the leading term dominates; the next is e^{-9 pi^2}/9 relative
    assert heat.q_interval(1, 1) == pytest.approx(8 / math.pi**2 * math.exp(-math.pi**2), rel=1e-30 + 1e-15)
    assert heat.q_interval(1, 1) == pytest.approx(4.1925e-5, abs=1e-9)
    for t in (0.01, 0.3, 2.0):
        assert heat.q_interval(2, t) == pytest.approx(2 * heat.q_interval(1, t / 4), rel=1e-14)


@pytest.mark.parametrize("a", [0.5, 1.0, 2.0])
@pytest.mark.parametrize("frac", [1e-4, 0.01, 0.05, 0.1, 0.2])
def test_q_against_eigen_reference(a, frac):
    # short times go through the dual form; compare with a long eigen sum
    t = frac * a * a
    assert heat.q_interval(a, t) == pytest.approx(q_eigen_reference(a, t), abs=1e-13 * a)


@pytest.mark.parametrize("frac", [0.5, 1.0, 2.0])
def test_q_dual_forms_agree(frac):
    a = 1.3
    t = frac * a * a / math.pi**2
    assert heat._q_short_time(a, t, 1e-17) == pytest.approx(heat._q_eigen(a, t, 1e-17), abs=1e-15)


@pytest.mark.parametrize("a", [0.5, 1.0, 2.0])
def test_q_invariants(a):
    ts = np.concatenate([[0], np.geomspace(1e-8, 5 * a * a, 500)])
    qs = np.array([heat.q_interval(a, float(t)) for t in ts])
    assert qs[0] == a
    assert np.all(np.diff(qs) < 0)
    assert np.all((qs >= 0) & (qs <= a))
    assert np.all(qs <= a * np.exp(-ts * math.pi**2 / a**2) * (1 + 1e-12))


def test_q_rejects():
    with pytest.raises(DomainError):
        heat.q_interval(0, 1)
    with pytest.raises(DomainError):
        heat.q_interval(1, -1)


@pytest.mark.parametrize("a", [0.5, 1.0, 2.0])
def test_interval_torsion_quadrature(a):
    T = heat.heat_torsion(heat.interval_curve(a), 1e-10)
    assert T == pytest.approx(a**3 / 12, rel=1e-8)


def test_adaptive_simpson():
    assert heat.adaptive_simpson(math.sin, 0, math.pi, 1e-12) == pytest.approx(2, abs=1e-11)
    assert heat.adaptive_simpson(lambda x: math.sqrt(x), 0, 1, 1e-10) == pytest.approx(2 / 3, abs=1e-8)


def test_rect_via_heat_examples():
    assert heat.torsion_rect_via_heat(1, 1) == pytest.approx(exact.rect_torsion_series(1, 1)[0], abs=1e-5)
    approx, bound = exact.rect_torsion_asymptotic(0.1, 10)
    assert abs(heat.torsion_rect_via_heat(0.1, 10) - approx) <= bound
    assert heat.torsion_rect_via_heat(1, 2) == pytest.approx(heat.torsion_rect_via_heat(2, 1), rel=1e-10)


@settings(max_examples=50, deadline=None)
@given(st.floats(0.05, 3), st.floats(1, 10))
def test_rect_routes_agree(a, q):
    b = a * q
    series = exact.rect_torsion_series(a, b)[0]
    assert heat.torsion_rect_via_heat(a, b) == pytest.approx(series, rel=1e-9)
    assert series <= heat.product_torsion_upper(a**3 / 12, b)


def test_box_via_heat():
    # a 3-D box is bounded by each of its slab upper bounds
    T = heat.torsion_box_via_heat([0.1, 1, 1])
    assert T < exact.rect_torsion_series(0.1, 1)[0] * 1
    assert T < 0.1**3 / 12
    assert heat.torsion_box_via_heat([2.0]) == pytest.approx(8 / 12)


def test_product_upper():
    eps = 0.1
    assert heat.product_torsion_upper(eps**3 / 12, 1) == pytest.approx(eps**3 / 12)
    assert heat.product_torsion_upper(2, 3) > heat.product_torsion_upper(1, 3)
    assert heat.product_torsion_upper(1, 4) > heat.product_torsion_upper(1, 3)


def test_c_constant_values():
    assert heat.c_constant(1) == pytest.approx(2, abs=1e-12)
    assert heat.c_constant(2) == pytest.approx(math.pi, abs=1e-12)
    with pytest.raises(DomainError):
        heat.c_constant(0)


@pytest.mark.parametrize("d2", [1, 2, 3])
def test_c_constant_quadrature(d2):
    assert heat.c_constant(d2) == pytest.approx(c_constant_dblquad(d2), rel=1e-8)


def test_product_lower_example():
    for eps in (0.3, 0.1):
        lo = heat.product_torsion_lower(eps**3 / 12, math.pi**2 / eps**2, eps, 2, 1.0, 4.0)
        assert lo == pytest.approx(eps**3 / 12 - 4 / math.pi**2 * eps**4, rel=1e-12)
    assert heat.product_torsion_lower(1 / 12, math.pi**2, 1, 1, 1, 2) < 0


def test_product_sandwich_rates():
    gaps = []
    for eps in (0.2, 0.1, 0.05, 0.025):
        T = heat.torsion_rect_via_heat(eps, 1)
        up = heat.product_torsion_upper(eps**3 / 12, 1)
        lo = heat.product_torsion_lower(eps**3 / 12, math.pi**2 / eps**2, eps, 1, 1, 2)
        assert lo <= T <= up
        gaps.append((up - T) / eps**3)
    ratios = [b / a for a, b in zip(gaps, gaps[1:])]
    assert all(0.45 < r < 0.55 for r in ratios)


def test_eigsum_examples():
    assert heat.eigsum_lower_bound(2, [1.0]) == pytest.approx(math.pi)
    disk = heat.eigsum_lower_bound(2, [J01**2])
    assert disk == pytest.approx(math.pi / J01**4, rel=1e-12)
    assert disk == pytest.approx(0.0939, abs=1e-4) and disk < math.pi / 8
    sq = sorted(math.pi**2 * (i * i + j * j) for i in range(1, 10) for j in range(1, 10))[:20]
    assert heat.eigsum_lower_bound(2, sq) < exact.rect_torsion_series(1, 1)[0]
    with pytest.raises(DomainError):
        heat.eigsum_lower_bound(2, [2.0, 1.0])


def test_eigsum_disk_many_terms():
    lams = heat.disk_eigenvalues(1.0, 200)
    assert lams[0] == pytest.approx(J01**2)
    assert lams[1] == pytest.approx(J11**2) and lams[2] == pytest.approx(J11**2)
    bound = heat.eigsum_lower_bound(2, lams)
    assert heat.eigsum_lower_bound(2, lams[:1]) < bound < math.pi / 8


def test_ab_bound():
    assert heat.ab_bound(2) == pytest.approx(math.pi * (1 + (J01 / J11) ** 4), rel=1e-12)
    assert heat.ab_bound(2) == pytest.approx(3.629, abs=1e-3)
    kj = exact.kohler_jobin_ball(2)
    assert kj / heat.ab_bound(2) == pytest.approx(J01**4 * J11**4 / (8 * (J01**4 + J11**4)), rel=1e-12)
    assert kj / heat.ab_bound(2) == pytest.approx(3.62, abs=5e-3)
    for d in (2, 3, 4):
        assert heat.ab_bound(d) < exact.kohler_jobin_ball(d)


def test_curve_product():
    c = heat.interval_curve(1) * heat.interval_curve(2)
    assert c.measure == 2
    assert c.lambda1 == pytest.approx(math.pi**2 * 1.25)
    assert c(0.1) == pytest.approx(heat.q_interval(1, 0.1) * heat.q_interval(2, 0.1))
