"""Exception types raised across the package."""


class HeckeForgeError(Exception):
    """Base class for computation errors (CLI exit code 1)."""


class DomainError(HeckeForgeError, ValueError):
    """An argument lies outside the domain of an operation."""


class FieldMismatchError(HeckeForgeError, ValueError):
    pass


class ReductionError(HeckeForgeError, RuntimeError):
    """Fundamental-domain reduction did not terminate within its step budget."""


class UnsupportedGradingError(HeckeForgeError, ValueError):
    pass


class ConsistencyError(HeckeForgeError, ArithmeticError):
    """An internal invariant failed. This signals a bug, never bad input."""


class ExpressionError(HeckeForgeError, ValueError):
    """Malformed user-supplied expression (word, point, polynomial, number)."""
