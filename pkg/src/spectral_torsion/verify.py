"""Built-in verification suites behind ``spectral-torsion verify``.

Each check appends a PASS, FAIL or INFO line to a :class:`Report`.  FAIL
lines carry the name of the violated inequality; INFO lines are conjecture
monitors and never affect the exit status.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate

from . import diagram, exact, fd_solver, heat
from .errors import InequalityViolation, ResolutionError
from .shapes import Ball, DisjointUnion, Rect, SpectralSummary

SUITES = ("inequalities", "heat", "fd", "all")
KJ_BALL_TOL_EXACT = 1e-9
KJ_BALL_TOL_FD = 1e-2
CONJECTURE_SLACK = 1e-3


@dataclass
class Report:
    lines: list = field(default_factory=list)
    failures: list = field(default_factory=list)

    def ok(self, msg):
        self.lines.append(f"PASS {msg}")

    def fail(self, ref, msg):
        self.failures.append(ref)
        self.lines.append(f"FAIL [{ref}] {msg}")

    def info(self, msg):
        self.lines.append(f"INFO {msg}")

    def expect(self, cond, ref, msg):
        if cond:
            self.ok(msg)
        else:
            self.fail(ref, msg)

    @property
    def passed(self) -> bool:
        return not self.failures

    def text(self) -> str:
        return "\n".join(self.lines)


# ---------------------------------------------------------------------------
# corpus


def exact_corpus():
    """(name, summary) pairs computed without finite differences."""
    out = []
    for d in range(1, exact.MAX_DIM + 1):
        for r in (1.0, 0.7):
            out.append((f"ball d={d} r={r}", exact.summary(Ball(d, r))))
    for q in (1.0, 1.5, 2.0, 4.0, 10.0, 50.0):
        out.append((f"rect 1x{q}", exact.summary(Rect(1.0, q))))
    for q in (0.25, 0.5, 1.0):
        union = DisjointUnion((Ball(2, 1.0), Ball(2, q)))
        out.append((f"two disks 1,{q}", exact.summary(union)))
    for n in range(1, 9):
        out.append((f"omega_n n={n}", exact.omega_n(n, 2)))
    return out


def raster_corpus(h: float = 1 / 64):
    """FD summaries of the raster shapes, each normalized to unit area."""
    out = []
    for tag, build in diagram.RASTER_CORPUS:
        shape = diagram.normalize_to_measure(build())
        out.append((f"raster {tag}", fd_solver.fd_summary(shape, h)))
    return out


def corrupt_summary() -> SpectralSummary:
    """A deliberately impossible summary (lambda1 T > |Omega|) for negative tests."""
    return SpectralSummary.unchecked(lambda1=10.0, torsion=1.0, measure=1.0, dim=2)


# ---------------------------------------------------------------------------
# inequality checks


def check_inequalities(name, s: SpectralSummary, report: Report, ball_tol=None):
    d = s.dim
    slack = 1e-12 + (d / 2 + 2) * s.err
    try:
        s.check()
    except InequalityViolation as exc:
        report.fail(exc.reference, f"{name}: {exc}")
    fk = s.lambda1 * s.measure ** (2 / d) / exact.faber_krahn_ball(d)
    sv = s.torsion / s.measure ** ((d + 2) / d) / exact.saint_venant_ball(d)
    kj = exact.kohler_jobin_value(s) / exact.kohler_jobin_ball(d)
    bad = []
    if fk < 1 - slack:
        report.fail("faber-krahn", f"{name}: lambda1 |Omega|^(2/d) ratio {fk:.12g} < 1")
        bad.append(1)
    if sv > 1 + slack:
        report.fail("saint-venant", f"{name}: T |Omega|^(-(d+2)/d) ratio {sv:.12g} > 1")
        bad.append(1)
    if kj < 1 - slack:
        report.fail("kohler-jobin", f"{name}: T lambda1^((d+2)/2) ratio {kj:.12g} < 1")
        bad.append(1)
    if ball_tol is not None:
        report.expect(abs(kj - 1) <= ball_tol, "kohler-jobin",
                      f"{name}: ball attains Kohler-Jobin, |ratio - 1| = {abs(kj - 1):.3g}")
    if not bad:
        report.ok(f"{name}: efficiency {exact.efficiency(s):.6f}, FK {fk:.6f}, SV {sv:.6f}, KJ {kj:.6f}")
    if d == 2:
        try:
            s1 = s.scaled(s.measure ** -0.5)
            diagram.to_xy(s1, name)
        except InequalityViolation as exc:
            report.fail(exc.reference, f"{name}: diagram point {exc}")


def suite_inequalities(report: Report, inject_corrupt=False, raster_h=1 / 64):
    corpus = exact_corpus()
    for name, s in corpus:
        is_ball = name.startswith("ball") or name in ("omega_n n=1",)
        check_inequalities(name, s, report, KJ_BALL_TOL_EXACT if is_ball else None)
    rasters = raster_corpus(raster_h)
    for name, s in rasters:
        check_inequalities(name, s, report, KJ_BALL_TOL_FD if name == "raster disk" else None)
    if inject_corrupt:
        check_inequalities("injected corrupt summary", corrupt_summary(), report)

    # conjecture monitor: no domain should beat the slab efficiency pi^2/12
    allsum = corpus + rasters
    best = max(allsum, key=lambda item: exact.efficiency(item[1]))
    F = exact.efficiency(best[1])
    verdict = "consistent" if F <= math.pi**2 / 12 + CONJECTURE_SLACK else "INCONSISTENT"
    report.info(f"efficiency monitor: max F = {F:.6f} ({best[0]}) vs pi^2/12 = "
                f"{math.pi**2 / 12:.6f}: {verdict} with the conjectured bound")
    planar = [s.scaled(s.measure ** -0.5) for _, s in allsum if s.dim == 2]
    y_min = min(1 / (s.lambda1 * s.torsion) for s in planar)
    report.info(f"diagram floor monitor: min y = {y_min:.6f} vs 12/pi^2 = "
                f"{diagram.CONJECTURED_Y:.6f}")
    pts = [diagram.to_xy(s) for s in planar]
    above = diagram.vertical_convexity_report(pts)
    report.info(f"vertical convexity monitor: {len(above)} of {len(pts)} points above the "
                "Kohler-Jobin line")


# ---------------------------------------------------------------------------
# heat content


def c_constant_quadrature(d2: int) -> float:
    """C_{d2} from its defining double integral with lambda1 = 1."""
    inner = lambda t: (4 * math.pi * t) ** (-d2 / 2) * integrate.quad(
        lambda r: r**d2 * math.exp(-r * r / (4 * t)), 0, math.inf, epsabs=0, epsrel=1e-13
    )[0]
    outer = integrate.quad(lambda t: math.exp(-t) * inner(t), 0, math.inf,
                           epsabs=0, epsrel=1e-12, limit=200)[0]
    from .specfun import unit_ball_volume

    return 2 * d2 * unit_ball_volume(d2) * outer


def suite_heat(report: Report):
    for a in (0.5, 1.0, 2.0):
        report.expect(heat.q_interval(a, 0.0) == a, "heat-content", f"Q(0) = a for a={a}")
        ts = np.linspace(0, 2 * a * a, 400)
        qs = [heat.q_interval(a, float(t)) for t in ts]
        report.expect(all(q2 < q1 for q1, q2 in zip(qs, qs[1:])), "heat-content",
                      f"Q decreasing on [0, 2a^2] for a={a}")
        env = [a * math.exp(-t * math.pi**2 / a**2) for t in ts]
        report.expect(all(q <= e * (1 + 1e-12) for q, e in zip(qs, env)), "heat-content",
                      f"Q(t) <= a exp(-t pi^2/a^2) for a={a}")
        T = heat.heat_torsion(heat.interval_curve(a), 1e-11)
        rel = abs(T - a**3 / 12) / (a**3 / 12)
        report.expect(rel <= 1e-8, "heat-content", f"int Q = a^3/12 for a={a}, rel err {rel:.2e}")
    for a, b in ((1, 1), (1, 2.5), (0.2, 1.7), (1, 10)):
        series, _ = exact.rect_torsion_series(a, b)
        quad = heat.torsion_rect_via_heat(a, b)
        rel = abs(series - quad) / series
        report.expect(rel <= 1e-5, "torsion-routes",
                      f"rect {a}x{b}: series vs heat quadrature rel diff {rel:.2e}")
        lower = exact.rect_torsion_lower(a, b)
        report.expect(series > lower, "rect-lower", f"rect {a}x{b}: T > a^3b/12 - 11a^4/180")
        asym, bound = exact.rect_torsion_asymptotic(a, b)
        report.expect(abs(series - asym) <= bound, "rect-asymptotic",
                      f"rect {a}x{b}: |T - asymptotic| = {abs(series - asym):.3e} <= {bound:.3e}")
    for d2 in (1, 2, 3):
        c, q = heat.c_constant(d2), c_constant_quadrature(d2)
        report.expect(abs(c - q) <= 1e-8 * c, "product-lower",
                      f"C_{d2} = {c:.12g} matches quadrature {q:.12g}")
    # product bounds on thin slabs (0, eps) x (0, 1)
    for eps in (0.05, 0.1, 0.2):
        T = exact.rect_torsion_series(eps, 1.0)[0]
        up = heat.product_torsion_upper(eps**3 / 12, 1.0)
        lo = heat.product_torsion_lower(eps**3 / 12, math.pi**2 / eps**2, eps, 1, 1.0, 2.0)
        report.expect(lo <= T <= up, "product-bounds",
                      f"slab eps={eps}: {lo:.6e} <= T={T:.6e} <= {up:.6e}")


# ---------------------------------------------------------------------------
# finite differences


def suite_fd(report: Report):
    j2 = exact.ball_lambda1(2, 1.0)
    s = fd_solver.fd_summary(Ball(2, 1.0), 1 / 64, refine=True)
    e_lam, e_t = abs(s.lambda1 / j2 - 1), abs(s.torsion / (math.pi / 8) - 1)
    report.expect(e_lam <= 5e-4 and e_t <= 5e-4, "fd-accuracy",
                  f"refined unit disk (h=1/64): lambda1 err {e_lam:.2e}, T err {e_t:.2e}")
    dom = fd_solver.rasterize(Rect(1.0, 1.0), 0.25)
    lam_h = 2 * (2 - 2 * math.cos(math.pi / 4)) / 0.25**2
    got = fd_solver.eigen_fd(dom)[0]
    report.expect(abs(got - lam_h) <= 1e-8 * lam_h, "fd-accuracy",
                  f"unit square h=1/4: lambda1 {got:.10f} vs discrete {lam_h:.10f}")
    for a, b in ((1.0, 1.0), (0.5, 1.3), (0.4, 3.0)):
        fs = fd_solver.fd_summary(Rect(a, b), a / 64)
        series = exact.rect_torsion_series(a, b)[0]
        rel = abs(fs.torsion - series) / series
        report.expect(rel <= 5e-3, "fd-accuracy", f"rect {a}x{b} h=a/64: T rel err {rel:.2e}")
    fs = fd_solver.fd_summary(DisjointUnion((Ball(2, 1.0), Ball(2, 1.0))), 1 / 32)
    rel = abs(fs.lambda2 / fs.lambda1 - 1)
    report.expect(rel <= 1e-2, "krahn-szego",
                  f"two equal disks: lambda2/lambda1 - 1 = {rel:.2e}")
    try:
        fd_solver.fd_summary(Ball(2, 0.01), 0.5)
        report.fail("fd-resolution", "coarse grid on a tiny disk did not raise")
    except ResolutionError:
        report.ok("coarse grid on a tiny disk raises a resolution error")


def run(suite: str = "all", inject_corrupt: bool = False) -> Report:
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    report = Report()
    if suite in ("inequalities", "all"):
        suite_inequalities(report, inject_corrupt=inject_corrupt)
    elif inject_corrupt:
        check_inequalities("injected corrupt summary", corrupt_summary(), report)
    if suite in ("heat", "all"):
        suite_heat(report)
    if suite in ("fd", "all"):
        suite_fd(report)
    return report
