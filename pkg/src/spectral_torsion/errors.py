"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain where an operation is defined."""


class UnsupportedOperation(TypeError):
    """The operation is not available for this shape variant."""


class NumericError(RuntimeError):
    """An iterative method failed to converge."""


class ResolutionError(ValueError):
    """A grid is too coarse to resolve the shape (no interior nodes)."""


class InequalityViolation(AssertionError):
    """A computed quantity violates one of the hard inequalities.

    ``reference`` names the inequality (e.g. ``"Prop 2.3"``) so reports can
    point at what failed.
    """

    def __init__(self, reference, message):
        super().__init__(f"[{reference}] {message}")
        self.reference = reference
