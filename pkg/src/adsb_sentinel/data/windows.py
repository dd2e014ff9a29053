"""
Sliding windows over normalised flight matrices.
"""

from collections.abc import Sequence
from dataclasses import dataclass
from typing import Optional

import numpy as np

from adsb_sentinel.concurrency import parallel_map
from adsb_sentinel.data.errors import DataError
from adsb_sentinel.data.normalize import NormalizationStats, apply_normalizer
from adsb_sentinel.data.records import FEATURES, FlightSequence


@dataclass
class FeatureWindow:
    """An (L, 6) feature matrix with provenance.

    ``target`` is the next row for forecasting windows; ``label`` is a binary
    label or a class id for classification windows.
    """

    values: np.ndarray
    flight_id: str
    start: int
    label: Optional[int] = None
    target: Optional[np.ndarray] = None

    @property
    def length(self) -> int:
        return int(self.values.shape[0])

    @property
    def rows(self) -> range:
        """Source record indices covered by this window."""
        return range(self.start, self.start + self.length)


def window(
    matrix: np.ndarray,
    length: int,
    stride: int = 1,
    flight_id: str = "",
    forecast: bool = False,
    label: Optional[int] = None,
) -> list[FeatureWindow]:
    """Cut one flight matrix into sliding windows.

    Forecast windows carry the row that follows them as ``target`` and are
    only produced where such a row exists.

    Raises:
        DataError: If ``length < 2`` or ``stride < 1``
    """
    if length < 2:
        raise DataError(f"window length must be at least 2, got {length}")
    if stride < 1:
        raise DataError(f"window stride must be at least 1, got {stride}")
    matrix = np.asarray(matrix, dtype=np.float64)
    if matrix.ndim != 2 or matrix.shape[1] != len(FEATURES):
        raise DataError(f"expected an (n, {len(FEATURES)}) matrix, got {matrix.shape}")

    n = matrix.shape[0]
    last_start = n - length if forecast else n - length + 1
    return [
        FeatureWindow(
            values=matrix[s : s + length].copy(),
            flight_id=flight_id,
            start=s,
            label=label,
            target=matrix[s + length].copy() if forecast else None,
        )
        for s in range(0, max(last_start, 0), stride)
    ]


def build_forecast_windows(
    flights: Sequence[FlightSequence],
    stats: NormalizationStats,
    length: int,
    stride: int = 1,
) -> list[FeatureWindow]:
    """Normalised next-step forecasting windows from every flight, in flight order."""

    def one(flight: FlightSequence) -> list[FeatureWindow]:
        return window(
            apply_normalizer(stats, flight),
            length,
            stride,
            flight_id=flight.flight_id,
            forecast=True,
        )

    return [w for per_flight in parallel_map(one, list(flights)) for w in per_flight]


def stack_windows(windows: Sequence[FeatureWindow]) -> np.ndarray:
    """Stack window values into a (B, L, 6) array."""
    if not windows:
        raise DataError("no windows to stack")
    lengths = {w.length for w in windows}
    if len(lengths) != 1:
        raise DataError(f"windows have mixed lengths {sorted(lengths)}")
    return np.stack([w.values for w in windows])


def normalize_windows(
    windows: Sequence[FeatureWindow], stats: NormalizationStats
) -> list[FeatureWindow]:
    """Copies of raw-unit windows with values (and targets) z-scored."""
    return [
        FeatureWindow(
            values=apply_normalizer(stats, w.values),
            flight_id=w.flight_id,
            start=w.start,
            label=w.label,
            target=None if w.target is None else apply_normalizer(stats, w.target),
        )
        for w in windows
    ]
