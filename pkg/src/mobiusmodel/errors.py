"""Exception hierarchy shared by every module."""


class ModelSpaceError(Exception):
    """Base class for all errors raised by mobiusmodel."""


class DomainError(ModelSpaceError, ValueError):
    """An argument lies outside the domain of an operation."""


class ConditioningError(ModelSpaceError, ArithmeticError):
    """A least-squares system is too ill-conditioned to be trusted."""


class DegeneracyError(ModelSpaceError, ArithmeticError):
    """A composite degenerated (vanishing determinant or denominator)."""
