"""Dirichlet eigenvalues and torsional rigidity: exact values, heat-content
quadrature, finite differences, and the (lambda1, 1/(lambda1 T)) diagram."""

from .errors import (
    DomainError,
    InequalityViolation,
    NumericError,
    ResolutionError,
    UnsupportedOperation,
)
from .exact import summary
from .shapes import (
    Ball,
    DisjointUnion,
    Interval,
    Method,
    Product,
    Raster2D,
    Rect,
    SpectralSummary,
    from_json,
    measure,
    scale,
    to_json,
)

__all__ = [
    "Ball",
    "DisjointUnion",
    "DomainError",
    "InequalityViolation",
    "Interval",
    "Method",
    "NumericError",
    "Product",
    "Raster2D",
    "Rect",
    "ResolutionError",
    "SpectralSummary",
    "UnsupportedOperation",
    "from_json",
    "measure",
    "scale",
    "summary",
    "to_json",
]

__version__ = "0.1.0"
