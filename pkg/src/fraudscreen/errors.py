"""Exception hierarchy shared by every pipeline stage.

The CLI maps these onto exit statuses, so each class corresponds to one
operational failure mode rather than to one module.
"""


class FraudScreenError(Exception):
    """Base class for all errors raised by fraudscreen."""


class DomainError(FraudScreenError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class DataError(FraudScreenError, ValueError):
    """Input data (files, values, parsed tokens) is unusable."""


class NumericError(FraudScreenError, ArithmeticError):
    """A numerical kernel failed to converge."""


class CapacityError(FraudScreenError):
    """A configured resource budget would be exceeded."""


class PreconditionError(FraudScreenError):
    """An operation was invoked in a state where it is undefined."""
