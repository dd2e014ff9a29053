"""
Error classes for the data pipeline.
"""

from typing import Optional

from adsb_sentinel.errors import SentinelError


class DataError(SentinelError):
    """Base class for data ingestion and preparation errors."""

    pass


class SchemaError(DataError):
    """Input file does not follow the state-vector CSV schema."""

    def __init__(self, message: str, column: Optional[str] = None):
        """
        Initialize a new schema error.

        Args:
            message: The error message
            column: The offending column, if one is known
        """
        self.column = column
        super().__init__(message)


class ZeroVarianceError(DataError):
    """A feature has no spread in the data a normalizer is fitted on."""

    def __init__(self, feature: str):
        self.feature = feature
        super().__init__(f"feature {feature!r} has zero variance; cannot normalise")
