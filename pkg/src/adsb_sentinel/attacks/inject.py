"""
Attack injectors.

Injectors never mutate their input; they return a tampered copy together with
the range of attacked record indices.
"""

import hashlib
import math

import numpy as np

from adsb_sentinel.attacks.errors import InvalidAttackError
from adsb_sentinel.attacks.spec import AttackKind, AttackSpec
from adsb_sentinel.data.records import FEATURE_INDEX, FlightSequence
from adsb_sentinel.data.records import wrap_headings

# Attacks begin within the first fifth of a flight so that windows see both
# clean and tampered messages.
ONSET_FRACTION = 0.2


def inject_gradual(flight: FlightSequence, spec: AttackSpec) -> tuple[FlightSequence, range]:
    """Add ``(i + 1) * delta`` to the target feature of the i-th attacked message.

    The drift runs from ``spec.start_index`` to the end of the flight. Headings
    are wrapped into [0, 360).

    Raises:
        InvalidAttackError: If the kind is not a drift or fewer than two
            messages follow the start index
    """
    if not spec.kind.is_drift:
        raise InvalidAttackError(f"{spec.kind.value} is not a gradual attack")
    n = len(flight)
    if spec.start_index + 2 > n:
        raise InvalidAttackError(
            f"start_index {spec.start_index} leaves fewer than 2 messages in a flight of {n}"
        )
    matrix = flight.to_matrix()
    column = FEATURE_INDEX[spec.kind.feature]
    steps = np.arange(1, n - spec.start_index + 1, dtype=np.float64)
    drifted = matrix[spec.start_index :, column] + steps * spec.delta
    if spec.kind is AttackKind.HEADING_DRIFT:
        drifted = wrap_headings(drifted)
    matrix[spec.start_index :, column] = drifted
    return flight.with_features(matrix), range(spec.start_index, n)


def inject_standing_still(
    flight: FlightSequence, length: int, start_index: int
) -> tuple[FlightSequence, range]:
    """Zero the groundspeed and freeze the position for ``length`` messages.

    Raises:
        InvalidAttackError: If ``length < 2`` or the span runs past the flight
    """
    if length < 2:
        raise InvalidAttackError(f"standing-still length must be >= 2, got {length}")
    n = len(flight)
    if start_index < 0 or start_index + length > n:
        raise InvalidAttackError(
            f"standing still [{start_index}, {start_index + length}) exceeds a flight of {n}"
        )
    matrix = flight.to_matrix()
    span = slice(start_index, start_index + length)
    lat, lon = FEATURE_INDEX["latitude"], FEATURE_INDEX["longitude"]
    matrix[span, FEATURE_INDEX["groundspeed"]] = 0.0
    matrix[span, lat] = matrix[start_index, lat]
    matrix[span, lon] = matrix[start_index, lon]
    return flight.with_features(matrix), range(start_index, start_index + length)


def inject(flight: FlightSequence, spec: AttackSpec) -> tuple[FlightSequence, range]:
    if spec.kind is AttackKind.STANDING_STILL:
        return inject_standing_still(flight, int(spec.delta), spec.start_index)
    return inject_gradual(flight, spec)


def flight_seed(flight_id: str) -> int:
    """Stable 64-bit integer derived from a flight id."""
    return int.from_bytes(hashlib.sha256(flight_id.encode("utf-8")).digest()[:8], "little")


def attack_start_index(
    flight: FlightSequence, seed: int, min_span: int = 2, fraction: float = ONSET_FRACTION
) -> int:
    """Onset drawn uniformly from [0, fraction * len] for this (seed, flight).

    The bound is lowered so that at least ``min_span`` messages follow.
    """
    n = len(flight)
    upper = min(int(math.floor(fraction * n)), n - min_span)
    if upper < 0:
        raise InvalidAttackError(f"flight {flight.flight_id} is too short for a span of {min_span}")
    rng = np.random.default_rng([seed, flight_seed(flight.flight_id)])
    return int(rng.integers(0, upper + 1))
