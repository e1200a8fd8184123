"""Closed-form and series values of lambda1, lambda2 and torsion.

Covers balls in any dimension up to 30, rectangles, intervals, disjoint
unions and the vanishing family Omega_n, together with the scale-free
functionals built from them (efficiency, Kohler-Jobin and Faber-Krahn
quantities).
"""

from __future__ import annotations

import math
from typing import Optional, Sequence

import numpy as np

from . import heat
from .errors import DomainError, NumericError, UnsupportedOperation
from .shapes import (
    Ball,
    DisjointUnion,
    Interval,
    Method,
    Product,
    Raster2D,
    Rect,
    Shape,
    SpectralSummary,
    boundary_measure,
    dimension,
    measure,
    weakest,
)
from .specfun import bessel_first_zero, bessel_order_zero, unit_ball_volume

MAX_DIM = 30
PI2 = math.pi**2


def _check_dim(d, low=1):
    if int(d) != d or not low <= d <= MAX_DIM:
        raise DomainError(f"dimension must be an integer in [{low}, {MAX_DIM}], got {d!r}")
    return int(d)


# ---------------------------------------------------------------------------
# balls


def ball_lambda1(d: int, R: float) -> float:
    d = _check_dim(d)
    return bessel_order_zero(d) ** 2 / R**2


def ball_lambda2(d: int, R: float) -> float:
    d = _check_dim(d)
    return bessel_first_zero(d / 2) ** 2 / R**2


def ball_torsion(d: int, R: float) -> float:
    d = _check_dim(d)
    return unit_ball_volume(d) * R ** (d + 2) / (d * (d + 2))


def alpha(d: int) -> float:
    """Efficiency lambda1*T/|B| of a ball in R^d, i.e. j_{d/2-1,1}^2 / (d(d+2))."""
    d = _check_dim(d)
    return bessel_order_zero(d) ** 2 / (d * (d + 2))


def ball_radius_for_measure(d: int, m: float) -> float:
    return (m / unit_ball_volume(d)) ** (1.0 / d)


def kohler_jobin_ball(d: int) -> float:
    """T(B) lambda1(B)^((d+2)/2), the same for every ball in R^d."""
    return ball_torsion(d, 1.0) * ball_lambda1(d, 1.0) ** ((d + 2) / 2)


def faber_krahn_ball(d: int) -> float:
    """|B|^(2/d) lambda1(B), the same for every ball in R^d."""
    return unit_ball_volume(d) ** (2 / d) * ball_lambda1(d, 1.0)


def saint_venant_ball(d: int) -> float:
    """T(B) / |B|^((d+2)/d), the same for every ball in R^d."""
    return ball_torsion(d, 1.0) / unit_ball_volume(d) ** ((d + 2) / d)


# ---------------------------------------------------------------------------
# rectangles


def rect_lambda1(a: float, b: float) -> float:
    return PI2 * (1 / a**2 + 1 / b**2)


def rect_lambda2(a: float, b: float) -> float:
    a, b = min(a, b), max(a, b)
    return PI2 * (1 / a**2 + 4 / b**2)


def rect_torsion_series(a: float, b: float, tol: float = 1e-14) -> tuple[float, float]:
    """Torsional rigidity of the a-by-b rectangle with a rigorous error bar.

    Starts from the double series over odd k, l of
    ``64ab/pi^6 * k^-2 l^-2 (k^2/a^2 + l^2/b^2)^-1``; the inner sum over l is
    done in closed form, which leaves

        T = a^3 b / 12 - (16 a^4 / pi^5) * sum_{k odd} tanh(k pi b / 2a) / k^5.

    Since 0 < tanh < 1 the truncated tail is at most ``1 / (8 K^4)`` times the
    prefactor; K is doubled until that bound is below ``tol * value``.

    Returns ``(value, err)`` with ``|T - value| <= err``.
    """
    if tol < 1e-14:
        raise DomainError("tol must be at least 1e-14")
    a, b = min(a, b), max(a, b)
    lead = a**3 * b / 12.0
    pref = 16.0 * a**4 / math.pi**5
    K = 63
    while K < 1 << 22:
        k = np.arange(1, K + 1, 2, dtype=float)
        s = math.fsum((np.tanh(k * math.pi * b / (2 * a)) / k**5)[::-1])
        tail = 1.0 / (8.0 * K**4)
        value = lead - pref * (s + 0.5 * tail)
        err = 0.5 * pref * tail
        if err <= tol * value:
            return value, err
        K = 2 * K + 1
    raise NumericError("rectangle torsion series did not reach the requested tolerance")  # pragma: no cover


def rect_torsion_lower(a: float, b: float) -> float:
    """Energy-based lower bound a^3 b/12 - 11 a^4/180 (a <= b)."""
    a, b = min(a, b), max(a, b)
    return a**3 * b / 12.0 - 11.0 * a**4 / 180.0


def rect_torsion_asymptotic(a: float, b: float) -> tuple[float, float]:
    """Thin-rectangle expansion of the torsion and its guaranteed error bound."""
    from .specfun import zeta_int

    a, b = min(a, b), max(a, b)
    approx = a**3 * b / 12.0 - 31.0 * zeta_int(5) * a**4 / (2 * math.pi**5)
    return approx, a**5 / (15.0 * b)


# ---------------------------------------------------------------------------
# unions and the Omega_n family


def union_summary(parts: Sequence[SpectralSummary]) -> SpectralSummary:
    """Summary of a disjoint union from the summaries of its parts.

    The spectrum of a disjoint union is the merged spectrum of the parts, so
    lambda2 is the second smallest value among every available lambda1 and
    lambda2.  It is left unset when a part with unknown lambda2 could still
    undercut that candidate.
    """
    parts = list(parts)
    if not parts:
        raise DomainError("union_summary needs at least one part")
    dims = {p.dim for p in parts}
    if len(dims) != 1:
        raise DomainError(f"union parts have mixed dimensions {sorted(dims)}")
    pool = sorted(
        [p.lambda1 for p in parts] + [p.lambda2 for p in parts if p.lambda2 is not None]
    )
    lam1 = pool[0]
    lam2: Optional[float] = pool[1] if len(pool) > 1 else None
    if lam2 is not None and any(p.lambda2 is None and p.lambda1 < lam2 for p in parts):
        lam2 = None
    return SpectralSummary(
        lambda1=lam1,
        lambda2=lam2,
        torsion=math.fsum(p.torsion for p in parts),
        measure=math.fsum(p.measure for p in parts),
        dim=parts[0].dim,
        method=weakest([p.method for p in parts]),
        err=max(p.err for p in parts),
    )


def omega_n_value(n: int, d: int) -> float:
    """lambda1*T of one ball of volume 1/n plus n(n-1) balls of volume 1/n^2."""
    if int(n) != n or n < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")
    d = _check_dim(d, low=2)
    F_ball = ball_lambda1(d, 1.0) * ball_torsion(d, 1.0) / unit_ball_volume(d)
    return F_ball * (n ** (2 / d) + n - 1) / n ** (1 + 2 / d)


def omega_n(n: int, d: int) -> SpectralSummary:
    """Closed-form summary of the measure-one set Omega_n (no n^2 parts built)."""
    if int(n) != n or n < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")
    d = _check_dim(d, low=2)
    omega = unit_ball_volume(d)
    big = (n * omega) ** (-1 / d)
    lam1 = ball_lambda1(d, big)
    if n == 1:
        lam2 = ball_lambda2(d, big)
    else:
        lam2 = min(ball_lambda2(d, big), ball_lambda1(d, (n * n * omega) ** (-1 / d)))
    torsion = ball_torsion(d, 1.0) * omega ** (-1 - 2 / d) * (
        n ** (-1 - 2 / d) + (n - 1) * n ** (-1 - 4 / d)
    )
    return SpectralSummary(
        lambda1=lam1, lambda2=lam2, torsion=torsion, measure=1.0, dim=d, meta={"n": n}
    )


def omega_n_union(n: int, d: int) -> DisjointUnion:
    """Explicit union of n^2 - n + 1 balls realising Omega_n."""
    omega = unit_ball_volume(d)
    big = Ball(d, (n * omega) ** (-1 / d))
    small = Ball(d, (n * n * omega) ** (-1 / d))
    return DisjointUnion((big,) + (small,) * (n * (n - 1)))


# ---------------------------------------------------------------------------
# scale-free functionals


def efficiency(s: SpectralSummary) -> float:
    """lambda1 * T / |Omega|; at most 1 for every domain."""
    return s.lambda1 * s.torsion / s.measure


def cross_section_F(k: int) -> float:
    """Limiting efficiency of omega x B_k(eps) as eps -> 0.

    For k = 1 the cross-section is an interval and the value is pi^2/12.
    """
    k = _check_dim(k)
    return bessel_order_zero(k) ** 2 / (k * (k + 2))


def kohler_jobin_value(s: SpectralSummary) -> float:
    return s.torsion * s.lambda1 ** ((s.dim + 2) / 2)


# ---------------------------------------------------------------------------
# dispatch


def _ball_summary(s: Ball) -> SpectralSummary:
    return SpectralSummary(
        lambda1=ball_lambda1(s.d, s.r),
        lambda2=ball_lambda2(s.d, s.r),
        torsion=ball_torsion(s.d, s.r),
        measure=measure(s),
        dim=s.d,
    )


def _interval_summary(s: Interval) -> SpectralSummary:
    L = s.length
    return SpectralSummary(
        lambda1=PI2 / L**2, lambda2=4 * PI2 / L**2, torsion=L**3 / 12, measure=L, dim=1
    )


def _rect_summary(s: Rect, tol: float) -> SpectralSummary:
    T, err = rect_torsion_series(s.a, s.b, max(tol, 1e-14))
    return SpectralSummary(
        lambda1=rect_lambda1(s.a, s.b),
        lambda2=rect_lambda2(s.a, s.b),
        torsion=T,
        measure=s.a * s.b,
        dim=2,
        method=Method.SERIES,
        err=err / T,
    )


def _flatten(factors):
    for f in factors:
        if isinstance(f, Product):
            yield from _flatten(f.factors)
        else:
            yield f


def _box_sides(factors):
    sides = []
    for f in factors:
        if isinstance(f, Interval):
            sides.append(f.length)
        elif isinstance(f, Rect):
            sides.extend([f.a, f.b])
        else:
            return None
    return sides


def _box_surface(sides):
    return 2.0 * math.fsum(math.prod(sides[:i] + sides[i + 1:]) for i in range(len(sides)))


def _box_summary(sides, tol):
    lam = [PI2 / L**2 for L in sides]
    T = heat.torsion_box_via_heat(sides, tol)
    return SpectralSummary(
        lambda1=math.fsum(lam),
        lambda2=math.fsum(lam) + 3 * min(lam),
        torsion=T,
        measure=math.prod(sides),
        dim=len(sides),
        method=Method.HEAT_QUADRATURE if len(sides) > 1 else Method.EXACT,
        err=tol if len(sides) > 1 else 0.0,
    )


def _product_summary(s: Product, tol: float) -> SpectralSummary:
    factors = list(_flatten(s.factors))
    if len(factors) == 1:
        return summary(factors[0], tol)
    sides = _box_sides(factors)
    if sides is not None:
        return _box_summary(sides, tol)

    box = [f for f in factors if isinstance(f, (Interval, Rect))]
    rest = [f for f in factors if not isinstance(f, (Interval, Rect))]
    if not box or len(rest) != 1 or not isinstance(rest[0], Ball):
        raise UnsupportedOperation(
            "products are supported for boxes and for a box times one ball"
        )
    ball = rest[0]
    box_s = _box_summary(_box_sides(box), tol)
    ball_s = _ball_summary(ball)
    sides = _box_sides(box)

    lam1 = box_s.lambda1 + ball_s.lambda1
    lam2 = min(box_s.lambda2 + ball_s.lambda1, box_s.lambda1 + ball_s.lambda2)
    total = box_s.measure * ball_s.measure
    d = box_s.dim + ball_s.dim

    # either factor may play the thin role; both bounds are valid, keep the best
    T_box_low = box_s.torsion * (1 - box_s.err)
    upper = min(
        box_s.torsion * (1 + box_s.err) * ball_s.measure,
        ball_s.torsion * box_s.measure,
        total / lam1,
    )
    lower = max(
        heat.product_torsion_lower(
            T_box_low, box_s.lambda1, box_s.measure, ball.d, ball_s.measure, boundary_measure(ball)
        ),
        heat.product_torsion_lower(
            ball_s.torsion, ball_s.lambda1, ball_s.measure, len(sides), box_s.measure,
            _box_surface(sides),
        ),
        heat.eigsum_lower_bound(d, [lam1]),
    )
    mid = 0.5 * (upper + lower)
    return SpectralSummary(
        lambda1=lam1,
        lambda2=lam2,
        torsion=mid,
        measure=total,
        dim=d,
        method=Method.HEAT_QUADRATURE,
        err=0.5 * (upper - lower) / lower,
        meta={"torsion_lower": lower, "torsion_upper": upper},
    )


def summary(s: Shape, tol: float = 1e-12) -> SpectralSummary:
    """Best available spectral summary of a shape.

    Balls and intervals are exact, rectangles use the torsion series, boxes
    use heat-content quadrature, a box times a ball reports the midpoint of
    the product torsion bounds (``err`` is the relative half-gap), unions are
    merged from their parts and rasters go through the finite-difference
    solver at the raster's own grid spacing.
    """
    if isinstance(s, Ball):
        return _ball_summary(s)
    if isinstance(s, Interval):
        return _interval_summary(s)
    if isinstance(s, Rect):
        return _rect_summary(s, tol)
    if isinstance(s, Product):
        return _product_summary(s, tol)
    if isinstance(s, DisjointUnion):
        return union_summary([summary(p, tol) for p in s.parts])
    if isinstance(s, Raster2D):
        from .fd_solver import domain_summary

        return domain_summary(s.domain)
    raise UnsupportedOperation(f"no summary for {s!r}")


__all__ = [
    "alpha",
    "ball_lambda1",
    "ball_lambda2",
    "ball_radius_for_measure",
    "ball_torsion",
    "cross_section_F",
    "efficiency",
    "faber_krahn_ball",
    "kohler_jobin_ball",
    "kohler_jobin_value",
    "omega_n",
    "omega_n_union",
    "omega_n_value",
    "rect_lambda1",
    "rect_lambda2",
    "rect_torsion_asymptotic",
    "rect_torsion_lower",
    "rect_torsion_series",
    "saint_venant_ball",
    "summary",
    "union_summary",
    "dimension",
]
