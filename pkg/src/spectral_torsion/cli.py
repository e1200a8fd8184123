"""Command-line interface.

Exit codes: 0 success, 1 violated inequality or failed verification,
2 unparseable or invalid input, 3 unsupported operation, 4 insufficient
grid resolution, 5 I/O failure.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import diagram, exact, fd_solver, verify
from .errors import (
    DomainError,
    InequalityViolation,
    NumericError,
    ResolutionError,
    UnsupportedOperation,
)
from .shapes import Ball, DisjointUnion, Raster2D, SpectralSummary, from_json, measure, to_json

EXIT_OK, EXIT_VIOLATION, EXIT_PARSE, EXIT_UNSUPPORTED, EXIT_RESOLUTION, EXIT_IO = range(6)


def _num(v):
    if isinstance(v, float):
        return float(f"{v:.12g}")
    if isinstance(v, dict):
        return {k: _num(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_num(x) for x in v]
    return v


def _emit(obj, out):
    json.dump(_num(obj), out, indent=2)
    out.write("\n")


def _summary_json(s: SpectralSummary, shape=None) -> dict:
    out = s.as_dict()
    if shape is not None and not (isinstance(shape, Raster2D) and shape.path is None):
        out["shape"] = to_json(shape)
    return out


def _parse_shape(text):
    try:
        return from_json(text)
    except json.JSONDecodeError as exc:
        raise _ParseError(f"malformed shape JSON: {exc}") from None
    except (ValueError, TypeError) as exc:
        raise _ParseError(f"invalid shape: {exc}") from None


class _ParseError(Exception):
    pass


# ---------------------------------------------------------------------------
# commands


def cmd_exact(args, out):
    shape = _parse_shape(args.shape)
    _emit(_summary_json(exact.summary(shape, tol=args.tol), shape), out)


def cmd_fd(args, out):
    shape = _parse_shape(args.shape)
    if isinstance(shape, Raster2D):
        if args.refine:
            raise UnsupportedOperation("a mask file has a fixed spacing and cannot be refined")
        if args.h is not None and not math.isclose(args.h, shape.domain.h, rel_tol=1e-9):
            raise UnsupportedOperation(
                f"mask file spacing is {shape.domain.h}; --h {args.h} cannot be applied"
            )
        s = fd_solver.domain_summary(shape.domain)
    else:
        if args.h is None:
            raise _ParseError("--h is required for non-raster shapes")
        s = fd_solver.fd_summary(shape, args.h, refine=args.refine)
    _emit(_summary_json(s, shape), out)


def cmd_diagram(args, out):
    families = [f.strip() for f in args.families.split(",") if f.strip()]
    try:
        families = [diagram.Family(f) for f in families]
    except ValueError as exc:
        raise _ParseError(str(exc)) from None
    points = []
    for fam in families:
        n = min(args.n, len(diagram.RASTER_CORPUS)) if fam is diagram.Family.RASTER_GRID else args.n
        points.extend(diagram.sample_family(fam, n, raw=args.raw))
    os.makedirs(args.out, exist_ok=True)
    pts_path = os.path.join(args.out, "points.csv")
    bnd_path = os.path.join(args.out, "bounds.csv")
    diagram.write_points_csv(points, pts_path)
    xs = np.geomspace(diagram.FK_X, args.x_max, args.bounds_n)
    diagram.write_bounds_csv([float(x) for x in xs], bnd_path)
    _emit({"points": pts_path, "bounds": bnd_path, "rows": len(points)}, out)


def _class_of(shape):
    if isinstance(shape, Ball):
        return "ball"
    if isinstance(shape, DisjointUnion) and len(shape.parts) == 2:
        return "two_balls" if all(isinstance(p, Ball) for p in shape.parts) else "union"
    return type(shape).__name__.lower()


def cmd_scalarize(args, out):
    if (args.k is None) == (args.l is None):
        raise _ParseError("give exactly one of --k and --l")
    eigen = args.eigen if args.eigen is not None else (1 if args.k is not None else 2)
    coef = args.k if args.k is not None else args.l
    if (args.k is not None and eigen != 1) or (args.l is not None and eigen != 2):
        raise _ParseError("--k goes with --eigen 1 and --l with --eigen 2")
    predict = diagram.scalarize_k_predict if eigen == 1 else diagram.scalarize_l_predict
    pred = predict(coef, args.d)
    ps = exact.summary(pred.minimizer)
    report = {
        "coefficient": coef,
        "eigen": eigen,
        "d": args.d,
        "regime": pred.regime.value,
        "threshold": pred.threshold,
        "minimizer": to_json(pred.minimizer),
        "minimizer_measure": measure(pred.minimizer),
        "value": pred.value,
        "summary": ps.as_dict(),
    }
    if args.brute:
        res = diagram.scalarize_brute(coef, eigen, args.d, args.grid)
        rel = abs(res.value - pred.value) / pred.value
        report["brute"] = {
            "best": to_json(res.best),
            "family": res.family,
            "value": res.value,
            "per_family": res.per_family,
            "relative_difference": rel,
            "same_class": _class_of(res.best) == _class_of(pred.minimizer),
            "agrees": rel <= args.agree_tol and _class_of(res.best) == _class_of(pred.minimizer),
        }
    _emit(report, out)


def cmd_verify(args, out):
    report = verify.run(args.suite, inject_corrupt=args.inject_corrupt)
    out.write(report.text() + "\n")
    if report.passed:
        out.write(f"verify {args.suite}: all hard checks passed\n")
        return EXIT_OK
    refs = ", ".join(sorted(set(report.failures)))
    out.write(f"verify {args.suite}: {len(report.failures)} failure(s) [{refs}]\n")
    return EXIT_VIOLATION


# ---------------------------------------------------------------------------
# parser


def _positive_float(text):
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not (v > 0 and math.isfinite(v)):
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return v


def _positive_int(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="spectral-torsion", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("exact", help="closed-form or series summary of a shape")
    e.add_argument("--shape", required=True, help="shape as JSON")
    e.add_argument("--tol", type=_positive_float, default=1e-12)
    e.set_defaults(func=cmd_exact)

    f = sub.add_parser("fd", help="finite-difference summary of a planar shape or mask file")
    f.add_argument("--shape", required=True, help="shape as JSON (may be a raster file)")
    f.add_argument("--h", type=_positive_float, help="grid spacing")
    f.add_argument("--refine", action="store_true", help="also solve at h/2 and extrapolate")
    f.set_defaults(func=cmd_fd)

    d = sub.add_parser("diagram", help="write diagram points and bound curves as CSV")
    d.add_argument("--families", default="two_disks,rectangles,omega_n",
                   help="comma-separated: " + ",".join(f.value for f in diagram.Family))
    d.add_argument("--n", type=_positive_int, default=50, help="points per family")
    d.add_argument("--out", default=".", help="output directory")
    d.add_argument("--raw", action="store_true", help="emit points at their generating scale")
    d.add_argument("--bounds-n", type=_positive_int, default=200)
    d.add_argument("--x-max", type=_positive_float, default=400.0)
    d.set_defaults(func=cmd_diagram)

    s = sub.add_parser("scalarize", help="minimize k*lambda1 + T or l*lambda2 + T")
    s.add_argument("--k", type=_positive_float)
    s.add_argument("--l", type=_positive_float)
    s.add_argument("--eigen", type=int, choices=(1, 2))
    s.add_argument("--d", type=int, default=2)
    s.add_argument("--brute", action="store_true", help="cross-check by grid search")
    s.add_argument("--grid", type=_positive_int, default=200)
    s.add_argument("--agree-tol", type=_positive_float, default=1e-4)
    s.set_defaults(func=cmd_scalarize)

    v = sub.add_parser("verify", help="run the built-in verification suites")
    v.add_argument("--suite", choices=verify.SUITES, default="all")
    v.add_argument("--inject-corrupt", action="store_true",
                   help="test mode: add an impossible summary to the corpus")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    try:
        code = args.func(args, out)
    except _ParseError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_PARSE
    except UnsupportedOperation as exc:
        err.write(f"unsupported: {exc}\n")
        return EXIT_UNSUPPORTED
    except ResolutionError as exc:
        err.write(f"resolution: {exc}\n")
        return EXIT_RESOLUTION
    except DomainError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_PARSE
    except InequalityViolation as exc:
        err.write(f"violation: {exc}\n")
        return EXIT_VIOLATION
    except NumericError as exc:
        err.write(f"numeric failure: {exc}\n")
        return EXIT_VIOLATION
    except OSError as exc:
        err.write(f"I/O error: {exc}\n")
        return EXIT_IO
    return EXIT_OK if code is None else code


if __name__ == "__main__":
    sys.exit(main())
