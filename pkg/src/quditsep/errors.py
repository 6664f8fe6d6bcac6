"""Exception types raised across the package."""


class QuditError(ValueError):
    """Base class for invalid input to any quditsep routine."""


class InvalidDimensionError(QuditError):
    pass


class DimensionMismatchError(QuditError):
    pass


class InvalidStateError(QuditError):
    pass


class ParameterRangeError(QuditError):
    pass


class ResourceCapError(QuditError):
    """Raised when a request would exceed the desk-scale size limits."""


class NumericalError(ArithmeticError):
    """An internal consistency check failed; indicates a numerical problem, not bad input."""


class NumericalDegeneracyError(NumericalError):
    """A quantity that should be nonzero for valid input came out (numerically) zero."""
