"""Exception types shared across the package."""


class CVolError(Exception):
    """Base class for all package-specific errors."""


class DomainError(CVolError, ValueError):
    """Numeric input outside the domain of a function (on a branch cut, or at 0/1)."""


class DegenerateGeometryError(CVolError, ValueError):
    """A configuration of points or simplex shapes is geometrically degenerate."""


class TriangulationError(CVolError, ValueError):
    """Malformed triangulation data or violated combinatorial invariants."""


class ConvergenceError(CVolError, RuntimeError):
    """Newton iteration failed to reach the requested residual."""


class NonIntegralError(CVolError, ValueError):
    """A quantity that must be an integer (multiple of pi*i) is not, within tolerance."""


class InconsistentSystemError(CVolError, ValueError):
    """An integer linear system admits no solution over the integers."""


class SymbolMatchError(CVolError, ValueError):
    """A value could not be resolved over the symbolic logarithm basis."""
