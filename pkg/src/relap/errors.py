"""Exception types shared across the package."""


class RelapError(Exception):
    """Base class for all errors raised by relap."""


class DomainError(RelapError, ValueError):
    """An argument is outside the domain of the operation."""


class InvariantViolation(RelapError, AssertionError):
    """Two independent computations of the same quantity disagree.

    This signals either a bug or a violated mathematical guarantee; it is never expected
    on valid input.
    """


class BudgetExceeded(RelapError, RuntimeError):
    """An enumeration would visit more subsets than the configured budget."""
