"""
Z-score normalisation fitted on benign flights.
"""

from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from typing import Any, Union

import numpy as np

from adsb_sentinel.data.errors import DataError, ZeroVarianceError
from adsb_sentinel.data.records import FEATURES, FlightSequence


@dataclass(frozen=True)
class NormalizationStats:
    """Per-feature mean and population standard deviation in ``FEATURES`` order."""

    mean: tuple[float, ...]
    std: tuple[float, ...]

    def __post_init__(self):
        if len(self.mean) != len(FEATURES) or len(self.std) != len(FEATURES):
            raise DataError(
                f"normalization stats need {len(FEATURES)} means and stds, got "
                f"{len(self.mean)} and {len(self.std)}"
            )
        for name, value in zip(FEATURES, self.std):
            if not value > 0.0:
                raise ZeroVarianceError(name)

    def to_dict(self) -> dict[str, Any]:
        return {
            "features": list(FEATURES),
            "mean": [float(v) for v in self.mean],
            "std": [float(v) for v in self.std],
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "NormalizationStats":
        try:
            features = tuple(data.get("features", FEATURES))
            mean, std = data["mean"], data["std"]
        except (KeyError, TypeError, AttributeError) as e:
            raise DataError(f"malformed normalization stats: {e}") from e
        if features != FEATURES:
            raise DataError(f"normalization feature order {features} differs from {FEATURES}")
        return cls(mean=tuple(float(v) for v in mean), std=tuple(float(v) for v in std))


def _as_matrix(data: Union[FlightSequence, np.ndarray]) -> np.ndarray:
    return data.to_matrix() if isinstance(data, FlightSequence) else np.asarray(data, np.float64)


def fit_normalizer(benign_flights: Iterable[FlightSequence]) -> NormalizationStats:
    """Fit per-feature mean/std on benign flights.

    Raises:
        DataError: If there are no records
        ZeroVarianceError: If a feature is constant across all records
    """
    matrices = [f.to_matrix() for f in benign_flights if len(f)]
    if not matrices:
        raise DataError("cannot fit normalizer on an empty flight set")
    stacked = np.concatenate(matrices, axis=0)
    mean = stacked.mean(axis=0)
    std = stacked.std(axis=0)
    for name, value in zip(FEATURES, std):
        if not value > 0.0:
            raise ZeroVarianceError(name)
    return NormalizationStats(mean=tuple(mean.tolist()), std=tuple(std.tolist()))


def apply_normalizer(
    stats: NormalizationStats, flight: Union[FlightSequence, np.ndarray]
) -> np.ndarray:
    """Z-score a flight or an (..., 6) matrix."""
    return (_as_matrix(flight) - np.asarray(stats.mean)) / np.asarray(stats.std)


def denormalize(stats: NormalizationStats, matrix: np.ndarray) -> np.ndarray:
    return np.asarray(matrix, np.float64) * np.asarray(stats.std) + np.asarray(stats.mean)
