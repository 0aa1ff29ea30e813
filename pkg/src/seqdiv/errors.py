"""Exception types shared across the package."""


class SeqDivError(Exception):
    """Base class for all errors raised by seqdiv."""


class InvalidParameterError(SeqDivError, ValueError):
    """A configuration value is outside its allowed range."""


class InvalidInputError(SeqDivError, ValueError):
    """Input data is malformed, empty, or mismatched."""


class DegenerateInputError(InvalidInputError):
    """Input data has no spread (e.g. a constant series)."""


class NumericFailureError(SeqDivError, ArithmeticError):
    """An iterative routine failed to converge."""
