import math

import pytest
from scipy import special
from hypothesis import given, settings, strategies as st

from oracles import ball_lambda1_scipy, disk_union_torsion, rect_torsion_double_series
from spectral_torsion import exact
from spectral_torsion.errors import DomainError, UnsupportedOperation
from spectral_torsion.shapes import (
    Ball,
    DisjointUnion,
    Interval,
    Method,
    Product,
    Rect,
    SpectralSummary,
    measure,
    scale,
)
from spectral_torsion.specfun import unit_ball_volume, zeta_int

J01 = 2.404825557695773
J11 = 3.831705970207512


def test_ball_lambda1():
    assert exact.ball_lambda1(2, 1) == pytest.approx(5.7832, abs=5e-3)
    assert exact.ball_lambda1(2, 1 / math.sqrt(math.pi)) == pytest.approx(18.168, abs=1e-3)
    for d in (1, 2, 3, 7, 30):
        assert exact.ball_lambda1(d, 2.0) / exact.ball_lambda1(d, 1.0) == pytest.approx(0.25)
        assert exact.ball_lambda1(d, 1.3) == pytest.approx(ball_lambda1_scipy(d, 1.3), rel=1e-12)


def test_ball_lambda2():
    assert exact.ball_lambda2(2, 1) == pytest.approx(14.682, abs=1e-2)
    assert exact.ball_lambda1(2, 1) / exact.ball_lambda2(2, 1) == pytest.approx((J01 / J11) ** 2)
    assert exact.ball_lambda1(2, 1) / exact.ball_lambda2(2, 1) == pytest.approx(0.3939, abs=1e-4)


def test_ball_torsion():
    assert exact.ball_torsion(2, 1) == pytest.approx(math.pi / 8, rel=1e-14)
    for R in (0.3, 1, 2.5):
        area = math.pi * R * R
        assert exact.ball_torsion(2, R) == pytest.approx(area**2 / (8 * math.pi), rel=1e-12)
    for d in (1, 3, 5):
        assert exact.ball_torsion(d, 1.7) / exact.ball_torsion(d, 1) == pytest.approx(1.7 ** (d + 2))
    # interval (d = 1, R = 1/2) has T = 1/12
    assert exact.ball_torsion(1, 0.5) == pytest.approx(1 / 12)


def test_alpha_values():
    assert exact.alpha(2) == pytest.approx(0.723, abs=1e-3)
    assert exact.alpha(3) == pytest.approx(0.658, abs=1e-3)
    assert exact.alpha(4) == pytest.approx(0.612, abs=1e-3)
    vals = [exact.alpha(d) for d in range(2, 31)]
    assert all(b < a for a, b in zip(vals, vals[1:]))
    assert min(vals) > 0.25


def test_rect_lambda():
    assert exact.rect_lambda1(1, 1) == pytest.approx(2 * math.pi**2)
    assert exact.rect_lambda1(0.01, 1000) == pytest.approx(math.pi**2 * 1e4, rel=1e-9)
    assert exact.rect_lambda1(2, 6) == pytest.approx(exact.rect_lambda1(1, 3) / 4)
    # second eigenvalue is the second smallest of pi^2 (i^2/a^2 + j^2/b^2)
    for a, b in ((1, 1), (1, 1.5), (1, 3), (0.2, 7)):
        modes = sorted(math.pi**2 * (i * i / a**2 + j * j / b**2) for i in range(1, 6) for j in range(1, 30))
        assert exact.rect_lambda2(a, b) == pytest.approx(modes[1], rel=1e-14)


def test_rect_series_examples():
    T, err = exact.rect_torsion_series(1, 1)
    assert T == pytest.approx(0.03514, abs=1e-4)
    centre = 1 / 12 - 31 * zeta_int(5) / (2 * math.pi**5)
    assert centre - 1 / 15 <= T <= centre + 1 / 15
    assert err <= 1e-14 * T
    T, err = exact.rect_torsion_series(0.1, 10)
    assert T == pytest.approx(0.00082808, abs=7e-8)
    assert err <= 1e-14 * T


@pytest.mark.parametrize("a,b", [(1, 1), (1, 2), (0.3, 1), (1, 10), (0.05, 2)])
def test_rect_series_against_double_series(a, b):
    T, err = exact.rect_torsion_series(a, b)
    ref, tail = rect_torsion_double_series(a, b)
    assert abs(T - ref) <= tail + err + 1e-15


def test_rect_series_symmetric_and_scaling():
    assert exact.rect_torsion_series(2, 1)[0] == exact.rect_torsion_series(1, 2)[0]
    assert exact.rect_torsion_series(2, 4)[0] == pytest.approx(16 * exact.rect_torsion_series(1, 2)[0], rel=1e-13)


def test_rect_lower_examples():
    assert exact.rect_torsion_lower(1, 1) == pytest.approx(1 / 12 - 11 / 180)
    assert exact.rect_torsion_lower(0.1, 10) == pytest.approx(0.1**3 * 10 / 12 - 11e-4 / 180)


def test_rect_asymptotic_examples():
    approx, bound = exact.rect_torsion_asymptotic(1, 1)
    assert approx == pytest.approx(1 / 12 - 31 * special.zeta(5) / (2 * math.pi**5), rel=1e-14)
    assert approx == pytest.approx(0.0308126, abs=1e-7)
    assert bound == pytest.approx(1 / 15)
    approx, bound = exact.rect_torsion_asymptotic(0.1, 10)
    assert approx == pytest.approx(0.00082808, abs=1e-8)
    assert bound == pytest.approx(6.6667e-8, rel=1e-4)


rects = st.tuples(st.floats(0.01, 5), st.floats(1, 30)).map(lambda p: (p[0], p[0] * p[1]))


@settings(max_examples=100)
@given(rects)
def test_rect_bounds_property(ab):
    a, b = ab
    T, _ = exact.rect_torsion_series(a, b)
    assert exact.rect_torsion_lower(a, b) < T
    approx, bound = exact.rect_torsion_asymptotic(a, b)
    assert abs(T - approx) <= bound * (1 + 1e-9) + 1e-16 * a**3 * b
    assert T * exact.rect_lambda1(a, b) <= a * b


def test_union_two_equal_balls():
    for d in (2, 3, 5):
        B = exact.summary(Ball(d, 0.7))
        U = exact.summary(DisjointUnion((Ball(d, 0.7), Ball(d, 0.7))))
        assert U.lambda2 == B.lambda1
        assert U.torsion == pytest.approx(2 * B.torsion, rel=1e-15)


def test_union_two_disks_closed_form():
    for R2 in (0.2, 0.25, 0.3):
        R = math.sqrt(R2)
        r = math.sqrt(1 / math.pi - R2)
        U = exact.summary(DisjointUnion((Ball(2, r), Ball(2, R))))
        assert U.lambda1 == pytest.approx(J01**2 / R2, rel=1e-12)
        assert U.torsion == pytest.approx(disk_union_torsion(R), rel=1e-12)
        assert U.measure == pytest.approx(1, rel=1e-14)


def test_union_single_part_identity():
    B = exact.summary(Ball(3, 1.2))
    assert exact.union_summary([B]) == B


def test_union_merges_spectra():
    big, small = exact.summary(Ball(2, 1)), exact.summary(Ball(2, 0.9))
    U = exact.union_summary([big, small])
    assert U.lambda1 == big.lambda1
    assert U.lambda2 == small.lambda1
    with pytest.raises(DomainError):
        exact.union_summary([])


def test_union_method_and_err():
    R = exact.summary(Rect(1, 2))
    B = exact.summary(Ball(2, 1))
    U = exact.union_summary([R, B])
    assert U.method is Method.SERIES
    assert U.err == R.err


def test_omega_n_values():
    vals = [exact.omega_n_value(n, 2) for n in range(1, 257)]
    assert all(b < a for a, b in zip(vals, vals[1:]))
    assert vals[-1] < 0.05
    for d in (2, 3, 6):
        ball = exact.summary(Ball(d, exact.ball_radius_for_measure(d, 1)))
        assert exact.omega_n_value(1, d) == pytest.approx(ball.lambda1 * ball.torsion, rel=1e-12)


@pytest.mark.parametrize("n", range(1, 9))
def test_omega_n_matches_union(n):
    U = exact.summary(exact.omega_n_union(n, 2))
    assert U.lambda1 * U.torsion == pytest.approx(exact.omega_n_value(n, 2), rel=1e-12)
    S = exact.omega_n(n, 2)
    assert S.measure == pytest.approx(1, rel=1e-12)
    assert U.measure == pytest.approx(1, rel=1e-12)
    assert S.torsion == pytest.approx(U.torsion, rel=1e-12)
    assert S.lambda2 == pytest.approx(U.lambda2, rel=1e-12)


def test_efficiency():
    for d in (2, 3, 9):
        for R in (0.5, 3):
            assert exact.efficiency(exact.summary(Ball(d, R))) == pytest.approx(exact.alpha(d), abs=1e-10)
    # thin rectangle: F = (pi^2/12)(1 + a^2)(1 - 372 zeta(5) a/(2 pi^5) + O(a^4))
    a = 0.02
    F = exact.efficiency(exact.summary(Rect(a, 1)))
    approx, bound = exact.rect_torsion_asymptotic(a, 1)
    assert F == pytest.approx(exact.rect_lambda1(a, 1) * approx / a, abs=exact.rect_lambda1(a, 1) * bound / a)
    assert math.pi**2 / 12 - 0.011 < F < math.pi**2 / 12


def test_cross_section_F():
    assert exact.cross_section_F(1) == pytest.approx(math.pi**2 / 12, rel=1e-14)
    assert exact.cross_section_F(2) == pytest.approx(0.723, abs=1e-3)
    assert all(exact.cross_section_F(k) <= math.pi**2 / 12 + 1e-15 for k in range(1, 31))


def test_kohler_jobin():
    for R in (0.3, 1, 4):
        assert exact.kohler_jobin_value(exact.summary(Ball(2, R))) == pytest.approx(math.pi / 8 * J01**4, rel=1e-12)
    assert math.pi / 8 * J01**4 == pytest.approx(13.134, abs=1e-3)
    for s in (Rect(1, 3), DisjointUnion((Ball(2, 1), Ball(2, 0.4)))):
        v = exact.kohler_jobin_value(exact.summary(s))
        assert v >= math.pi / 8 * J01**4
        assert exact.kohler_jobin_value(exact.summary(scale(s, 2.7))) == pytest.approx(v, rel=1e-10)


def test_summary_dispatch():
    s = exact.summary(Ball(2, 1))
    assert (s.lambda1, s.torsion, s.measure, s.method) == (
        pytest.approx(5.7832, abs=1e-4), pytest.approx(0.39270, abs=1e-5), pytest.approx(math.pi), Method.EXACT)
    assert exact.summary(Interval(1)).torsion == pytest.approx(1 / 12)
    r = exact.summary(Rect(1, 1))
    assert r.torsion == pytest.approx(0.03514, abs=1e-5)
    assert r.lambda1 == pytest.approx(19.7392, abs=1e-4)


def test_summary_box_product():
    # Interval x Rect is a box; compare with the three-dimensional double series
    s = exact.summary(Product((Interval(0.5), Rect(1, 1))))
    assert s.dim == 3
    assert s.method is Method.HEAT_QUADRATURE
    assert s.lambda1 == pytest.approx(math.pi**2 * (4 + 1 + 1))
    assert s.measure == pytest.approx(0.5)
    # T(box) <= T(interval) * |rect| and T(box) <= T(rect) * |interval|
    assert s.torsion <= 0.5**3 / 12
    assert s.torsion <= exact.rect_torsion_series(1, 1)[0] * 0.5
    # Interval x Interval is the rectangle
    r = exact.summary(Product((Interval(1), Interval(2))))
    assert r.torsion == pytest.approx(exact.rect_torsion_series(1, 2)[0], rel=1e-9)


def test_summary_slab_product_bounds():
    eps = 0.05
    s = exact.summary(Product((Interval(eps), Ball(2, 1))))
    lo, hi = s.meta["torsion_lower"], s.meta["torsion_upper"]
    assert lo <= s.torsion <= hi
    assert hi == pytest.approx(eps**3 / 12 * math.pi)
    assert s.err == pytest.approx((hi - lo) / 2 / lo)
    # thin slab: efficiency close to pi^2/12
    assert exact.efficiency(s) == pytest.approx(math.pi**2 / 12, abs=0.05)


def test_summary_unsupported():
    with pytest.raises(UnsupportedOperation):
        exact.summary(Product((Ball(2, 1), Ball(2, 1))))


exact_shapes = st.one_of(
    st.builds(Ball, st.integers(1, 30), st.floats(0.1, 5)),
    st.builds(Rect, st.floats(0.1, 5), st.floats(0.1, 5)),
    st.builds(Interval, st.floats(0.1, 5)),
    st.lists(st.builds(Ball, st.just(2), st.floats(0.1, 3)), min_size=1, max_size=4).map(
        lambda ps: DisjointUnion(tuple(ps))),
)


@settings(max_examples=150)
@given(exact_shapes, st.sampled_from([0.5, 2.0]))
def test_scaling_laws(s, t):
    a, b = exact.summary(s), exact.summary(scale(s, t))
    d = a.dim
    assert b.lambda1 == pytest.approx(a.lambda1 / t**2, rel=1e-12)
    assert b.torsion == pytest.approx(a.torsion * t ** (d + 2), rel=1e-12)


@settings(max_examples=150)
@given(exact_shapes)
def test_classical_inequalities(s):
    S = exact.summary(s)
    d = S.dim
    slack = 1e-12 + 3 * S.err
    assert S.lambda1 * S.torsion <= S.measure * (1 + slack)
    assert S.measure ** (2 / d) * S.lambda1 >= unit_ball_volume(d) ** (2 / d) * exact.ball_lambda1(d, 1) * (1 - slack)
    assert exact.kohler_jobin_value(S) >= exact.kohler_jobin_ball(d) * (1 - slack)
    if d == 2:
        assert S.torsion <= S.measure**2 / (8 * math.pi) * (1 + slack)
    if isinstance(s, Ball):
        assert S.measure ** (2 / d) * S.lambda1 == pytest.approx(exact.faber_krahn_ball(d), rel=1e-10)
