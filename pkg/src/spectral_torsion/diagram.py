"""The planar attainable set in coordinates x = lambda1, y = 1/(lambda1 T).

Points are produced for measure-one representatives (the set is conical, so
nothing is lost), checked against the hard bounds, and written as CSV.  The
scalarized problems min k*lambda1 + T and min l*lambda2 + T are solved in
closed form and cross-checked by brute force over parametric families.
"""

from __future__ import annotations

import csv
import enum
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np
from scipy import optimize

from . import exact
from ._parallel import thread_map
from .errors import DomainError, InequalityViolation, UnsupportedOperation
from .shapes import (
    Ball,
    DisjointUnion,
    Raster2D,
    Rect,
    Shape,
    SpectralSummary,
    dimension,
    measure,
    scale,
)
from .specfun import bessel_order_zero, unit_ball_volume

J01 = bessel_order_zero(2)
FK_X = math.pi * J01**2  # lambda1 of the unit-area disk
TORSION_XY = 8 * math.pi  # x*y >= 8 pi
KJ_SLOPE = 8 / (math.pi * J01**4)  # y/x <= KJ_SLOPE
CONJECTURED_Y = 12 / math.pi**2


@dataclass(frozen=True)
class DiagramPoint:
    x: float
    y: float
    family: str = ""
    params: tuple = ()
    err: float = 0.0


def to_xy(s: SpectralSummary, family: str = "", params: Sequence[float] = (),
          check_measure: bool = True) -> DiagramPoint:
    """Map a planar summary to (lambda1, 1/(lambda1 T)) and check the hard bounds.

    ``err`` on the point is twice the summary error (y involves a product).
    Raises :class:`InequalityViolation` if a bound fails beyond that error.
    """
    if s.dim != 2:
        raise DomainError(f"the diagram is planar; got a {s.dim}-dimensional summary")
    if check_measure and s.measure > 1 + 1e-12:
        raise DomainError(f"measure {s.measure:.12g} exceeds 1; normalize first")
    x = s.lambda1
    y = 1.0 / (s.lambda1 * s.torsion)
    err = 2.0 * s.err
    pt = DiagramPoint(x, y, family, tuple(float(p) for p in params), err)
    if check_measure:
        check_point(pt)
    return pt


def check_point(pt: DiagramPoint) -> None:
    slack = pt.err + 1e-12
    if pt.x < FK_X * (1 - slack):
        raise InequalityViolation("faber-krahn", f"x={pt.x:.12g} below {FK_X:.12g}")
    if pt.x * pt.y < TORSION_XY * (1 - slack):
        raise InequalityViolation("saint-venant", f"x*y={pt.x * pt.y:.12g} below 8*pi")
    if pt.y > KJ_SLOPE * pt.x * (1 + slack):
        raise InequalityViolation("kohler-jobin", f"y/x={pt.y / pt.x:.12g} above {KJ_SLOPE:.12g}")


def normalize_to_measure(s: Shape) -> Shape:
    if isinstance(s, Raster2D):
        raise UnsupportedOperation("rasters cannot be rescaled; rasterize the normalized shape")
    return scale(s, measure(s) ** (-1.0 / dimension(s)))


def region_bounds(x: float) -> tuple[float, float, float]:
    """(y_low, y_high, conjectured_low) at abscissa x >= pi j01^2."""
    if x < FK_X * (1 - 1e-10):
        raise DomainError(f"x={x} lies below the Faber-Krahn threshold {FK_X:.6f}")
    return TORSION_XY / x, KJ_SLOPE * x, CONJECTURED_Y


def two_disk_curve(x: float) -> float:
    """y on the curve traced by two disjoint disks of total area one."""
    if not FK_X * (1 - 1e-10) <= x <= 2 * FK_X * (1 + 1e-10):
        raise DomainError(f"x={x} outside [{FK_X:.6f}, {2 * FK_X:.6f}]")
    j2 = J01**2
    return 8 * math.pi * x / (x * x - 2 * math.pi * j2 * x + 2 * math.pi**2 * j2 * j2)


def rect_bound_h(t: float) -> float:
    """Upper bound on y for the unit-area rectangle with lambda1 = 2 pi^2 t.

    With a^2 = t - sqrt(t^2 - 1) the short side, this is
    90 / (pi^2 t a^2 (15 - 11 a^2)), which expands to
    90 / (pi^2 t (11 + 15t - 22t^2 + (22t - 15) sqrt(t^2 - 1))).
    The factored form avoids the cancellation of the expanded one.
    """
    if t < 1 - 1e-12:
        raise DomainError(f"t={t} below 1")
    t = max(t, 1.0)
    u = 1.0 / (t + math.sqrt(t * t - 1.0))
    return 90.0 / (math.pi**2 * t * u * (15.0 - 11.0 * u))


def rect_curve(x: float) -> float:
    """Upper bound on y for unit-area rectangles with lambda1 = x."""
    if x < 2 * math.pi**2 * (1 - 1e-10):
        raise DomainError(f"x={x} below 2 pi^2")
    return rect_bound_h(max(x / (2 * math.pi**2), 1.0))


# ---------------------------------------------------------------------------
# families


class Family(str, enum.Enum):
    TWO_DISKS = "two_disks"
    RECTANGLES = "rectangles"
    OMEGA_N = "omega_n"
    RASTER_GRID = "raster_grid"


# (tag, builder) pairs for the raster family; each builder returns a planar shape
RASTER_CORPUS = (
    ("disk", lambda: Ball(2, 1.0)),
    ("square", lambda: Rect(1.0, 1.0)),
    ("rect2", lambda: Rect(1.0, 2.0)),
    ("rect4", lambda: Rect(1.0, 4.0)),
    ("rect8", lambda: Rect(1.0, 8.0)),
    ("disks_1_1", lambda: DisjointUnion((Ball(2, 1.0), Ball(2, 1.0)))),
    ("disks_1_0.5", lambda: DisjointUnion((Ball(2, 1.0), Ball(2, 0.5)))),
    ("disks_1_0.25", lambda: DisjointUnion((Ball(2, 1.0), Ball(2, 0.25)))),
    ("disk_square", lambda: DisjointUnion((Ball(2, 0.6), Rect(1.0, 1.0)))),
    ("rects_1_3", lambda: DisjointUnion((Rect(0.5, 1.0), Rect(0.5, 1.5)))),
)


def _generators(family, n_points):
    # (params, generating shape) per sample, in parameter order
    if family is Family.TWO_DISKS:
        ratios = np.linspace(0.0, 1.0, n_points) if n_points > 1 else np.array([0.0])
        out = []
        for q in ratios:
            q = float(q)
            shape = Ball(2, 1.0) if q == 0 else DisjointUnion((Ball(2, 1.0), Ball(2, q)))
            out.append(((q,), shape))
        return out
    if family is Family.RECTANGLES:
        ratios = np.geomspace(1.0, 50.0, n_points) if n_points > 1 else np.array([1.0])
        return [((float(q),), Rect(1.0, float(q))) for q in ratios]
    if family is Family.OMEGA_N:
        return [((n,), None) for n in range(1, n_points + 1)]
    if n_points > len(RASTER_CORPUS):
        raise DomainError(f"the raster corpus has only {len(RASTER_CORPUS)} shapes")
    return [((float(i),), build()) for i, (_, build) in enumerate(RASTER_CORPUS[:n_points])]


def sample_family(family, n_points: int, raw: bool = False,
                  raster_h: float = 1 / 96) -> list[DiagramPoint]:
    """Points of one shape family, sorted by parameter.

    two_disks sweeps the radius ratio r/R over [0, 1] (0 is the single
    disk); rectangles sweep the aspect ratio b/a geometrically over [1, 50];
    omega_n takes n = 1..n_points; raster_grid solves the first n_points
    shapes of :data:`RASTER_CORPUS` by finite differences with mesh
    ``raster_h`` (relative to unit measure).  Points are emitted at measure
    one unless ``raw`` is set, in which case the generating shapes (unit
    disk, unit short side) are used as they are and the hard bounds, which
    assume measure at most one, are not checked.
    """
    family = Family(family)
    if int(n_points) != n_points or n_points < 1:
        raise DomainError("n_points must be a positive integer")
    gens = _generators(family, int(n_points))

    def solve(item):
        params, shape = item
        if family is Family.OMEGA_N:
            return to_xy(exact.omega_n(params[0], 2), family.value, params)
        if not raw:
            shape = normalize_to_measure(shape)
        if family is Family.RASTER_GRID:
            from .fd_solver import fd_summary

            h = raster_h * (1.0 if not raw else math.sqrt(measure(shape)))
            s = fd_summary(shape, h)
        else:
            s = exact.summary(shape)
        return to_xy(s, family.value, params, check_measure=not raw)

    return thread_map(solve, gens)


def write_points_csv(points: Iterable[DiagramPoint], path) -> None:
    rows = sorted(points, key=lambda p: (p.family, p.params))
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["family", "param1", "param2", "x", "y", "err"])
        for p in rows:
            params = list(p.params) + [None, None]
            w.writerow([p.family] + [_fmt(v) for v in params[:2]] + [_fmt(p.x), _fmt(p.y), _fmt(p.err)])


def bound_rows(xs: Sequence[float]) -> list[dict]:
    rows = []
    for x in xs:
        lo, hi, conj = region_bounds(x)
        row = {"x": x, "y_low": lo, "y_high": hi, "y_conjectured": conj,
               "two_disk": None, "rect_bound": None}
        if x <= 2 * FK_X:
            row["two_disk"] = two_disk_curve(x)
        if x >= 2 * math.pi**2:
            row["rect_bound"] = rect_curve(x)
        rows.append(row)
    return rows


def write_bounds_csv(xs: Sequence[float], path) -> None:
    cols = ["x", "y_low", "y_high", "y_conjectured", "two_disk", "rect_bound"]
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(cols)
        for row in bound_rows(xs):
            w.writerow([_fmt(row[c]) for c in cols])


def _fmt(v):
    return "" if v is None else f"{v:.12g}"


def vertical_convexity_report(points: Sequence[DiagramPoint]) -> list[str]:
    """Points lying above the Kohler-Jobin line (no sampled point should)."""
    return [
        f"{p.family}{p.params}: y={p.y:.6g} above {KJ_SLOPE * p.x:.6g}"
        for p in points
        if p.y > KJ_SLOPE * p.x * (1 + p.err + 1e-12)
    ]


# ---------------------------------------------------------------------------
# scalarized problems


class Regime(str, enum.Enum):
    BELOW = "below_threshold"
    ABOVE = "above_threshold"


@dataclass(frozen=True)
class ScalarizationResult:
    coefficient: float
    regime: Regime
    minimizer: Shape
    value: float
    threshold: float
    eigen_index: int = 1


def k_threshold(d: int) -> float:
    j = bessel_order_zero(d)
    return 1.0 / (2 * d * unit_ball_volume(d) ** (4 / d) * j * j)


def l_threshold(d: int) -> float:
    j = bessel_order_zero(d)
    return 1.0 / (2 * d * (2 * unit_ball_volume(d)) ** (4 / d) * j * j)


def k_radius(k: float, d: int) -> float:
    j = bessel_order_zero(d)
    return (2 * k * d * j * j / unit_ball_volume(d)) ** (1 / (d + 4))


def l_radius(l: float, d: int) -> float:
    j = bessel_order_zero(d)
    return (l * d * j * j / unit_ball_volume(d)) ** (1 / (d + 4))


def _check_coef(c, d):
    if not c > 0:
        raise DomainError(f"coefficient must be positive, got {c!r}")
    if int(d) != d or not 2 <= d <= 30:
        raise DomainError(f"d must be an integer in [2, 30], got {d!r}")


def scalarize_k_predict(k: float, d: int) -> ScalarizationResult:
    """Minimizer of k lambda1 + T over sets of measure at most one."""
    _check_coef(k, d)
    k_star = k_threshold(d)
    if k <= k_star:
        R, regime = k_radius(k, d), Regime.BELOW
    else:
        R, regime = exact.ball_radius_for_measure(d, 1.0), Regime.ABOVE
    value = k * exact.ball_lambda1(d, R) + exact.ball_torsion(d, R)
    return ScalarizationResult(k, regime, Ball(d, R), value, k_star, 1)


def scalarize_l_predict(l: float, d: int) -> ScalarizationResult:
    """Minimizer of l lambda2 + T over sets of measure at most one."""
    _check_coef(l, d)
    l_star = l_threshold(d)
    if l <= l_star:
        R, regime = l_radius(l, d), Regime.BELOW
    else:
        R, regime = exact.ball_radius_for_measure(d, 0.5), Regime.ABOVE
    value = l * exact.ball_lambda1(d, R) + 2 * exact.ball_torsion(d, R)
    pair = DisjointUnion((Ball(d, R), Ball(d, R)))
    return ScalarizationResult(l, regime, pair, value, l_star, 2)


@dataclass
class BruteResult:
    best: Shape
    value: float
    family: str
    per_family: dict = field(default_factory=dict)


def _polish(f, grid, i):
    """Bounded 1-D refinement of ``f`` around grid point ``i``."""
    lo = grid[max(i - 1, 0)]
    hi = grid[min(i + 1, len(grid) - 1)]
    x0, v0 = float(grid[i]), float(f(grid[i]))
    if hi > lo:
        res = optimize.minimize_scalar(f, bounds=(lo, hi), method="bounded",
                                       options={"xatol": 1e-13 * max(hi, 1e-300)})
        if res.fun < v0:
            return float(res.x), float(res.fun)
    return x0, v0


def scalarize_brute(coefficient: float, eigen_index: int, d: int, grid_density: int = 200,
                    include_rasters: bool = False, raster_h: float = 1 / 48) -> BruteResult:
    """Grid search of coefficient*lambda_i + T over balls, two-ball unions,
    rectangles (d = 2) and optionally FD rasters, all with measure <= 1.

    Balls use radii r_max*i/G.  Two-ball unions use total measure s = i/G
    and the small part's share m = j/(2G), so m = 1/2 and s = 1 are on the
    grid.  Rectangles use G aspect ratios in [1, 20] times G measures.  The
    best grid cell of each family is polished along its continuous
    parameter (radius, total measure, measure) so that coarse sampling of
    one family cannot let a degenerate member of another win.  Ties go to
    the smaller measure, then to the lexicographically smaller family tag.
    The families are not exhaustive.
    """
    _check_coef(coefficient, d)
    if eigen_index not in (1, 2):
        raise DomainError("eigen_index must be 1 or 2")
    G = int(grid_density)
    if G < 2:
        raise DomainError("grid_density must be at least 2")
    c = coefficient
    omega = unit_ball_volume(d)
    j1 = bessel_order_zero(d)
    j2 = exact.bessel_first_zero(d / 2)
    t_unit = omega / (d * (d + 2))  # T(B_r) = t_unit r^(d+2)
    cands = []  # (value, measure, tag, builder)

    # single balls
    r_max = omega ** (-1 / d)
    jj = (j1 if eigen_index == 1 else j2) ** 2

    def ball_value(r):
        return c * jj / r**2 + t_unit * r ** (d + 2)

    radii = r_max * np.arange(1, G + 1) / G
    r, v = _polish(ball_value, radii, int(np.argmin(ball_value(radii))))
    cands.append((v, omega * r**d, "ball", lambda r=r: Ball(d, r)))

    # two-ball unions with measures s*(1-m) and s*m
    def pair_value(s, m):
        rs = (s * m / omega) ** (1 / d)
        rb = (s * (1 - m) / omega) ** (1 / d)
        lam = j1**2 / rb**2 if eigen_index == 1 else np.minimum(j1**2 / rs**2, j2**2 / rb**2)
        return c * lam + t_unit * (rs ** (d + 2) + rb ** (d + 2))

    s_grid = np.arange(1, G + 1) / G
    m_grid = np.arange(1, G + 1) / (2 * G)
    vals = pair_value(s_grid[:, None], m_grid[None, :])
    i, j = np.unravel_index(np.argmin(vals), vals.shape)  # row-major: smaller s first
    s_best, _ = _polish(lambda s: pair_value(s, m_grid[j]), s_grid, i)
    m_best, v = _polish(lambda m: pair_value(s_best, m), m_grid, j)
    rs = (s_best * m_best / omega) ** (1 / d)
    rb = (s_best * (1 - m_best) / omega) ** (1 / d)
    cands.append((v, s_best, "two_balls",
                  lambda rs=rs, rb=rb: DisjointUnion((Ball(d, rb), Ball(d, rs)))))

    if d == 2:
        # scaling to measure mu multiplies lambda by 1/mu and T by mu^2
        def scaled_value(base_lam, base_t):
            return lambda mu: c * base_lam / mu + base_t * mu**2

        best = None
        for q in np.geomspace(1.0, 20.0, G):
            a0 = 1 / math.sqrt(q)
            base = exact.summary(Rect(a0, a0 * q))
            lam0 = base.lambda1 if eigen_index == 1 else base.lambda2
            f = scaled_value(lam0, base.torsion)
            mu, v = _polish(f, s_grid, int(np.argmin(f(s_grid))))
            if best is None or v < best[0]:
                best = (v, mu, float(q))
        v, mu, q = best
        a0, t = 1 / math.sqrt(q), math.sqrt(mu)
        cands.append((v, mu, "rect", lambda: Rect(a0 * t, a0 * q * t)))

        if include_rasters:
            from .fd_solver import fd_summary

            for _, build in RASTER_CORPUS:
                shape = normalize_to_measure(build())
                fs = fd_summary(shape, raster_h)
                lam0 = fs.lambda1 if eigen_index == 1 else (fs.lambda2 or math.inf)
                f = scaled_value(lam0, fs.torsion)
                mu, v = _polish(f, s_grid, int(np.argmin(f(s_grid))))
                cands.append((v, mu, "raster",
                              lambda shape=shape, mu=mu: scale(shape, math.sqrt(mu))))

    cands.sort(key=lambda cand: (cand[0], cand[1], cand[2]))
    value, _, tag, build = cands[0]
    per_family = {}
    for cand in cands:
        per_family.setdefault(cand[2], cand[0])
    return BruteResult(build(), value, tag, per_family)
