"""Exception types shared across the package."""

from __future__ import annotations


class BoundedTypeError(Exception):
    """Base class for all errors raised by :mod:`boundedtype`."""


class DomainError(BoundedTypeError, ValueError):
    """An input lies outside the domain of an operation."""


class PoleError(BoundedTypeError, ZeroDivisionError):
    """Evaluation at (or numerically at) a pole.

    The offending pole location is available as ``location``.
    """

    def __init__(self, msg: str, location: complex | None = None):
        super().__init__(msg)
        self.location = location


class NumericError(BoundedTypeError, ArithmeticError):
    """An iterative or quadrature routine failed to meet its tolerance."""

    def __init__(self, msg: str, error_estimate: float | None = None):
        super().__init__(msg)
        self.error_estimate = error_estimate


class RankError(NumericError):
    """A Gram system is singular and cannot be solved consistently."""


class ContourError(NumericError):
    """A root sits too close to an integration contour."""


class ConditioningError(NumericError):
    """A denominator in a verification formula is numerically zero."""
