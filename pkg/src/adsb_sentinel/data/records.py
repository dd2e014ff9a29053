"""
State vectors and flights.
"""

import dataclasses
import math
from dataclasses import dataclass

import numpy as np

# Model feature order; identity fields are never features.
FEATURES = ("latitude", "longitude", "groundspeed", "heading", "vertical_rate", "altitude")
FEATURE_INDEX = {name: i for i, name in enumerate(FEATURES)}


def wrap_heading(value: float) -> float:
    """Map degrees into [0, 360)."""
    wrapped = value % 360.0
    return 0.0 if wrapped >= 360.0 else wrapped


def wrap_headings(values: np.ndarray) -> np.ndarray:
    wrapped = np.mod(values, 360.0)
    return np.where(wrapped >= 360.0, 0.0, wrapped)


@dataclass(frozen=True)
class StateVector:
    """One decoded state report in aviation units (knots, feet, feet/minute)."""

    time: float
    icao24: str
    callsign: str
    latitude: float
    longitude: float
    groundspeed: float
    heading: float
    vertical_rate: float
    altitude: float

    def features(self) -> tuple[float, ...]:
        return tuple(getattr(self, name) for name in FEATURES)

    def is_complete(self) -> bool:
        values = (self.time,) + self.features()
        return (
            all(isinstance(v, (int, float)) and math.isfinite(v) for v in values)
            and bool(self.icao24)
            and bool(self.callsign)
        )


@dataclass(frozen=True)
class FlightSequence:
    """Time-ascending state vectors of one (callsign, icao24) pair.

    ``segment`` numbers the pieces a long silence split the pair into.
    """

    callsign: str
    icao24: str
    records: tuple[StateVector, ...]
    segment: int = 0

    @property
    def flight_id(self) -> str:
        return f"{self.callsign}-{self.icao24}-{self.segment}"

    def __len__(self) -> int:
        return len(self.records)

    def times(self) -> np.ndarray:
        return np.array([r.time for r in self.records], dtype=np.float64)

    def to_matrix(self) -> np.ndarray:
        """Feature matrix of shape (len, 6) in ``FEATURES`` order."""
        if not self.records:
            return np.zeros((0, len(FEATURES)))
        return np.array([r.features() for r in self.records], dtype=np.float64)

    def with_features(self, matrix: np.ndarray) -> "FlightSequence":
        """Copy of the flight with feature values taken from ``matrix``.

        Timestamps and identity fields are kept as they are.
        """
        if matrix.shape != (len(self.records), len(FEATURES)):
            raise ValueError(
                f"feature matrix shape {matrix.shape} does not match flight "
                f"({len(self.records)}, {len(FEATURES)})"
            )
        records = tuple(
            dataclasses.replace(
                record, **{name: float(row[i]) for i, name in enumerate(FEATURES)}
            )
            for record, row in zip(self.records, matrix)
        )
        return dataclasses.replace(self, records=records)
