"""Exception hierarchy shared by every module of the package."""


class SqueezeError(Exception):
    """Base class for all library errors."""


class DomainError(SqueezeError, ValueError):
    """A parameter lies outside the domain where the operation is defined."""


class RangeError(SqueezeError, OverflowError):
    """A result would overflow double precision."""

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class SeriesError(SqueezeError, ArithmeticError):
    """A power series failed to converge within its term budget."""


class PoleError(SqueezeError, ZeroDivisionError):
    """A closed-form route hit a (removable) pole of its representation."""

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class TruncationError(SqueezeError):
    """The Fock cutoff is too small for the requested state."""

    def __init__(self, message, defect=None):
        super().__init__(message)
        self.defect = defect


class NumericError(SqueezeError, ArithmeticError):
    """An iterative numerical method did not converge."""
