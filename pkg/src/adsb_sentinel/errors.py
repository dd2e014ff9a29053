"""
Error class definitions for the adsb-sentinel library.
"""


class SentinelError(Exception):
    """Base class for all adsb-sentinel errors."""

    pass


class ConfigurationError(SentinelError):
    """Error related to configuration."""

    pass


class UsageError(SentinelError):
    """Error raised when an object is used in a way its configuration forbids."""

    pass
