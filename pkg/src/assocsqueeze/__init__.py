"""Squeezed and associated squeezed states of light built from the solutions
of a three-term recurrence, with Fock-space, Wigner-function and
nonclassicality diagnostics."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402,F401
    DomainError, NumericError, PoleError, RangeError, SeriesError, SqueezeError, TruncationError,
)
from .fock import StateVector, OperatorMatrix  # noqa: E402,F401
