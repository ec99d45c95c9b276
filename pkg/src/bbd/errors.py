"""Exception hierarchy shared by every module in the package."""


class BBDError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(BBDError, ValueError):
    """An argument lies outside the domain of the operation."""


class ShapeError(BBDError, ValueError):
    """Two inputs that must be aligned (lengths, grids) are not."""


class TruncationError(BBDError, ValueError):
    """A finite window does not cover enough probability mass."""


class UnsupportedError(BBDError, NotImplementedError):
    """No closed form exists for the requested pair; use a numeric route."""


class NumericInstabilityError(BBDError, ArithmeticError):
    """A finite-difference estimate is dominated by rounding noise."""
