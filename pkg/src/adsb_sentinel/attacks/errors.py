"""
Error classes for attack injection and dataset assembly.
"""

from adsb_sentinel.errors import SentinelError


class AttackError(SentinelError):
    """Base class for attack engine errors."""

    pass


class InvalidAttackError(AttackError):
    """An attack specification cannot be applied to the given flight."""

    pass


class InsufficientFlightsError(AttackError):
    """Too few usable flights to assemble a labelled dataset."""

    def __init__(self, minimum: int, available: int, length: int):
        """
        Initialize a new insufficient-flights error.

        Args:
            minimum: The minimum number of flights required
            available: The number of usable flights supplied
            length: The window length flights had to cover
        """
        self.minimum = minimum
        self.available = available
        super().__init__(
            f"need at least {minimum} flights with >= {length} records, got {available}"
        )
