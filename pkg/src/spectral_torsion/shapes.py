"""Shape vocabulary and the spectral summary record.

Shapes are immutable value objects.  Balls, rectangles and intervals are the
primitive variants; products and disjoint unions combine them; ``Raster2D``
wraps a finite-difference grid built by :mod:`spectral_torsion.fd_solver`.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field, replace
from typing import Any, Optional, Sequence, Union

from .errors import DomainError, InequalityViolation, UnsupportedOperation
from .specfun import unit_ball_volume


def _positive(name, value):
    value = float(value)
    if not math.isfinite(value) or value <= 0:
        raise DomainError(f"{name} must be positive and finite, got {value!r}")
    return value


@dataclass(frozen=True)
class Ball:
    d: int
    r: float

    def __post_init__(self):
        if int(self.d) != self.d or self.d < 1:
            raise DomainError(f"ball dimension must be a positive integer, got {self.d!r}")
        object.__setattr__(self, "d", int(self.d))
        object.__setattr__(self, "r", _positive("radius", self.r))


@dataclass(frozen=True)
class Rect:
    """Planar rectangle with sides ``a <= b`` (swapped on construction)."""

    a: float
    b: float

    def __post_init__(self):
        a, b = _positive("a", self.a), _positive("b", self.b)
        if a > b:
            a, b = b, a
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)


@dataclass(frozen=True)
class Interval:
    length: float

    def __post_init__(self):
        object.__setattr__(self, "length", _positive("length", self.length))


@dataclass(frozen=True)
class Product:
    factors: tuple

    def __post_init__(self):
        factors = tuple(self.factors)
        if not factors:
            raise DomainError("a product needs at least one factor")
        object.__setattr__(self, "factors", factors)


@dataclass(frozen=True)
class DisjointUnion:
    parts: tuple

    def __post_init__(self):
        parts = tuple(self.parts)
        if not parts:
            raise DomainError("a disjoint union needs at least one part")
        dims = {dimension(p) for p in parts}
        if len(dims) != 1:
            raise DomainError(f"union parts have mixed dimensions {sorted(dims)}")
        object.__setattr__(self, "parts", parts)


@dataclass(frozen=True, eq=False)
class Raster2D:
    """A 2-D grid domain; ``domain`` is a :class:`fd_solver.RasterDomain`."""

    domain: Any
    path: Optional[str] = None


Shape = Union[Ball, Rect, Interval, Product, DisjointUnion, Raster2D]


def dimension(s: Shape) -> int:
    if isinstance(s, Ball):
        return s.d
    if isinstance(s, (Rect, Raster2D)):
        return 2
    if isinstance(s, Interval):
        return 1
    if isinstance(s, Product):
        return sum(dimension(f) for f in s.factors)
    if isinstance(s, DisjointUnion):
        return dimension(s.parts[0])
    raise TypeError(f"not a shape: {s!r}")


def measure(s: Shape) -> float:
    """Lebesgue measure of a shape (node count times h^2 for rasters)."""
    if isinstance(s, Ball):
        return unit_ball_volume(s.d) * s.r**s.d
    if isinstance(s, Rect):
        return s.a * s.b
    if isinstance(s, Interval):
        return s.length
    if isinstance(s, Product):
        return math.prod(measure(f) for f in s.factors)
    if isinstance(s, DisjointUnion):
        return math.fsum(measure(p) for p in s.parts)
    if isinstance(s, Raster2D):
        return s.domain.measure
    raise TypeError(f"not a shape: {s!r}")


def scale(s: Shape, t: float) -> Shape:
    """Dilate a shape by ``t``; raster shapes must be re-rasterized instead."""
    t = _positive("scale factor", t)
    if isinstance(s, Ball):
        return Ball(s.d, s.r * t)
    if isinstance(s, Rect):
        return Rect(s.a * t, s.b * t)
    if isinstance(s, Interval):
        return Interval(s.length * t)
    if isinstance(s, Product):
        return Product(tuple(scale(f, t) for f in s.factors))
    if isinstance(s, DisjointUnion):
        return DisjointUnion(tuple(scale(p, t) for p in s.parts))
    if isinstance(s, Raster2D):
        raise UnsupportedOperation("raster shapes cannot be scaled; rasterize the scaled shape")
    raise TypeError(f"not a shape: {s!r}")


def boundary_measure(s: Shape) -> float:
    """(d-1)-dimensional measure of the boundary, for convex primitives."""
    if isinstance(s, Ball):
        return s.d * unit_ball_volume(s.d) * s.r ** (s.d - 1)
    if isinstance(s, Rect):
        return 2.0 * (s.a + s.b)
    if isinstance(s, Interval):
        return 2.0
    raise UnsupportedOperation(f"no boundary measure for {type(s).__name__}")


# ---------------------------------------------------------------------------
# JSON encoding


def to_json(s: Shape) -> dict:
    if isinstance(s, Ball):
        return {"type": "ball", "d": s.d, "r": s.r}
    if isinstance(s, Rect):
        return {"type": "rect", "a": s.a, "b": s.b}
    if isinstance(s, Interval):
        return {"type": "interval", "len": s.length}
    if isinstance(s, Product):
        return {"type": "product", "factors": [to_json(f) for f in s.factors]}
    if isinstance(s, DisjointUnion):
        return {"type": "union", "parts": [to_json(p) for p in s.parts]}
    if isinstance(s, Raster2D):
        if s.path is None:
            raise UnsupportedOperation("only file-backed rasters have a JSON encoding")
        return {"type": "raster", "path": s.path}
    raise TypeError(f"not a shape: {s!r}")


def from_json(obj: Union[str, dict]) -> Shape:
    """Decode a shape from its canonical JSON form (string or parsed dict).

    Malformed input raises ``ValueError`` (``json.JSONDecodeError`` is one).
    """
    if isinstance(obj, str):
        obj = json.loads(obj)
    if not isinstance(obj, dict) or "type" not in obj:
        raise ValueError(f"shape JSON must be an object with a 'type' field: {obj!r}")
    kind = obj["type"]
    try:
        if kind == "ball":
            return Ball(obj["d"], obj["r"])
        if kind == "rect":
            return Rect(obj["a"], obj["b"])
        if kind == "interval":
            return Interval(obj["len"])
        if kind == "product":
            return Product(tuple(from_json(f) for f in obj["factors"]))
        if kind == "union":
            return DisjointUnion(tuple(from_json(p) for p in obj["parts"]))
        if kind == "raster":
            from .fd_solver import load_mask

            return Raster2D(load_mask(obj["path"]), path=obj["path"])
    except KeyError as exc:
        raise ValueError(f"shape of type {kind!r} is missing field {exc}") from None
    raise ValueError(f"unknown shape type {kind!r}")


# ---------------------------------------------------------------------------
# Spectral summaries


class Method(str, enum.Enum):
    EXACT = "exact"
    SERIES = "series"
    HEAT_QUADRATURE = "heat_quadrature"
    FINITE_DIFFERENCE = "finite_difference"

    @property
    def rank(self) -> int:
        return list(Method).index(self)


def weakest(methods: Sequence[Method]) -> Method:
    return max((Method(m) for m in methods), key=lambda m: m.rank)


@dataclass(frozen=True)
class SpectralSummary:
    """First eigenvalues, torsional rigidity and measure of one shape.

    ``err`` is a relative error estimate covering every field.  Construction
    checks ``lambda1 <= lambda2`` and ``lambda1 * torsion <= measure``
    (the latter within ``err``); use :meth:`unchecked` to bypass both.
    """

    lambda1: float
    torsion: float
    measure: float
    dim: int
    method: Method = Method.EXACT
    err: float = 0.0
    lambda2: Optional[float] = None
    meta: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "method", Method(self.method))
        for name in ("lambda1", "torsion", "measure"):
            _positive(name, getattr(self, name))
        if self.lambda2 is not None:
            _positive("lambda2", self.lambda2)
        if not self.err >= 0:
            raise DomainError(f"err must be non-negative, got {self.err!r}")
        if not self.meta.get("unchecked"):
            self.check()

    def check(self):
        slack = 1e-12 + self.err
        if self.lambda2 is not None and self.lambda1 > self.lambda2 * (1 + slack):
            raise InequalityViolation(
                "ordering", f"lambda1={self.lambda1:.12g} exceeds lambda2={self.lambda2:.12g}"
            )
        if self.lambda1 * self.torsion > self.measure * (1 + slack):
            raise InequalityViolation(
                "polya",
                f"lambda1*T={self.lambda1 * self.torsion:.12g} exceeds |Omega|={self.measure:.12g}",
            )

    @classmethod
    def unchecked(cls, **fields) -> "SpectralSummary":
        meta = dict(fields.pop("meta", {}), unchecked=True)
        return cls(meta=meta, **fields)

    def as_dict(self) -> dict:
        out = {
            "lambda1": self.lambda1,
            "torsion": self.torsion,
            "measure": self.measure,
            "dim": self.dim,
            "method": self.method.value,
            "err": self.err,
        }
        if self.lambda2 is not None:
            out["lambda2"] = self.lambda2
        return out

    def scaled(self, t: float) -> "SpectralSummary":
        """Summary of the dilated shape, from the scaling laws."""
        d = self.dim
        return replace(
            self,
            lambda1=self.lambda1 / t**2,
            lambda2=None if self.lambda2 is None else self.lambda2 / t**2,
            torsion=self.torsion * t ** (d + 2),
            measure=self.measure * t**d,
        )
