"""Exception types raised by exind."""


class InvalidInputError(ValueError):
    """Raised when an argument violates an operation's preconditions."""


class InsufficientExceedancesError(InvalidInputError):
    """Raised when a threshold leaves too few exceedances for an estimate."""


class UnsupportedModelError(ValueError):
    """Raised when no closed-form extremal index is catalogued for a model."""
