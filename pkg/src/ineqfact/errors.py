"""Exception types shared across the package."""


class AmbientSizeError(ValueError):
    """Operands live in symmetric groups of different degree."""


class DomainError(ValueError):
    """Input outside the domain where an operation is defined."""


class ConsistencyError(AssertionError):
    """An internal identity that must hold was violated."""


class ResourceBoundError(RuntimeError):
    """A search was requested beyond the documented desk-scale bounds."""


class ArithmeticDomainError(ArithmeticError):
    """Series arithmetic precondition failed (non-unit, non-divisible, ...)."""


class StructuralError(ValueError):
    """A rotation system or map is internally inconsistent."""
