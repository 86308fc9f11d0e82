"""Exception types shared across the library."""

__all__ = [
    "QuadpoleError",
    "DomainError",
    "SingularityError",
    "UnsupportedOrderError",
    "CapacityError",
    "GeometryError",
    "ContractViolation",
    "SolverError",
]


class QuadpoleError(Exception):
    """Base class for all library errors."""


class DomainError(QuadpoleError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class SingularityError(QuadpoleError, ValueError):
    """Evaluation requested at (or too near) a singular point."""


class UnsupportedOrderError(QuadpoleError, LookupError):
    """No embedded quadrature rule with the requested precision."""


class CapacityError(QuadpoleError, ValueError):
    """Requested expansion order exceeds the embedded tables."""


class GeometryError(QuadpoleError, ValueError):
    """Sphere containment / disjointness precondition violated."""


class ContractViolation(QuadpoleError, ValueError):
    """Operands do not share the geometry or order the operation requires."""


class SolverError(QuadpoleError, RuntimeError):
    """Linear system could not be solved reliably."""
