"""
Error classes for the numerics package.
"""

from adsb_sentinel.errors import SentinelError


class NumericsError(SentinelError):
    """Base class for tensor arithmetic errors."""

    pass


class ShapeMismatchError(NumericsError):
    """Operand shapes are incompatible for the requested operation."""

    pass


class DomainError(NumericsError):
    """An argument lies outside the domain of a function (e.g. log of <= 0)."""

    pass


class OverflowError(NumericsError):
    """An operation would overflow 64-bit floating point."""

    pass


class NonFiniteError(NumericsError):
    """An operation produced NaN or Inf."""

    pass


class MissingGradientError(NumericsError):
    """An optimizer step found a trainable parameter without a gradient."""

    pass


class ValidationError(NumericsError):
    """Operand values violate an operation's contract."""

    pass
