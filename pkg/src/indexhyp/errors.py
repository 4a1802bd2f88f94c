"""Exception hierarchy shared by every module."""

from ._core import KernelError


class IndexHypError(Exception):
    """Base class for library errors."""


class PoleError(IndexHypError, ValueError):
    """An argument sits on a pole of a gamma factor or of a coefficient."""


class NonConvergenceError(IndexHypError, ArithmeticError):
    """A series, continuation or quadrature failed to meet its tolerance."""


class StripViolationError(IndexHypError, ValueError):
    """A complex spectral point lies outside the analyticity strip."""


class DomainError(IndexHypError, ValueError):
    """An input lies outside the domain of an operation."""


class CalibrationError(IndexHypError, ArithmeticError):
    """No candidate convention reproduces the reference values."""


class UnknownCheckError(IndexHypError, KeyError):
    """A verification id is not registered."""


__all__ = [
    "IndexHypError",
    "PoleError",
    "NonConvergenceError",
    "StripViolationError",
    "DomainError",
    "CalibrationError",
    "UnknownCheckError",
    "KernelError",
]
