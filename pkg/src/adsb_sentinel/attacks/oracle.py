"""
Independent attack oracle.

Recovers which attack produced a tampered flight by diffing it against the
original. It is used to validate the injectors; the detectors never see it.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from adsb_sentinel.attacks.errors import InvalidAttackError
from adsb_sentinel.attacks.spec import AttackKind
from adsb_sentinel.data.records import FEATURE_INDEX, FEATURES, FlightSequence

MATCH = "match"
NO_DIFFERENCE = "no_difference"
AMBIGUOUS = "ambiguous"

_DRIFT_BY_FEATURE = {kind.feature: kind for kind in AttackKind if kind.is_drift}
_STILL_FEATURES = {"latitude", "longitude", "groundspeed"}


@dataclass(frozen=True)
class OracleResult:
    status: str
    kind: Optional[AttackKind] = None
    attacked: Optional[range] = None
    delta: Optional[float] = None
    reason: str = ""


def _close(a: np.ndarray, b: np.ndarray) -> bool:
    return bool(np.all(np.abs(a - b) <= 1e-9 * np.maximum(1.0, np.abs(b))))


def _drift(
    feature: str, original: np.ndarray, tampered: np.ndarray, rows: np.ndarray
) -> OracleResult:
    # A heading drift of a whole turn leaves a row unchanged, so the span runs
    # from the first changed row to the end of the flight.
    n = len(original)
    start = int(rows[0])
    diff = tampered[start:] - original[start:]
    steps = np.arange(1, n - start + 1, dtype=np.float64)
    if feature == "heading":
        delta = float(np.mod(diff[0], 360.0))
        residual = np.mod(diff - steps * delta, 360.0)
        ok = bool(np.all(np.minimum(residual, 360.0 - residual) <= 1e-9 * np.maximum(1.0, steps)))
    else:
        delta = float(diff[0])
        ok = delta > 0 and _close(diff, steps * delta)
    if not ok or delta <= 0:
        return OracleResult(AMBIGUOUS, reason=f"{feature} increments are not a constant drift")
    return OracleResult(MATCH, _DRIFT_BY_FEATURE[feature], range(start, n), delta)


def _standing_still(original: np.ndarray, tampered: np.ndarray, rows: np.ndarray) -> OracleResult:
    start, stop = int(rows[0]), int(rows[-1]) + 1
    lat, lon, gs = (FEATURE_INDEX[f] for f in ("latitude", "longitude", "groundspeed"))
    span = tampered[start:stop]
    frozen = (
        np.all(span[:, gs] == 0.0)
        and np.all(span[:, lat] == tampered[start, lat])
        and np.all(span[:, lon] == tampered[start, lon])
        and tampered[start, lat] == original[start, lat]
        and tampered[start, lon] == original[start, lon]
    )
    if not frozen or stop - start < 2:
        return OracleResult(AMBIGUOUS, reason="position/speed changes are not a frozen span")
    return OracleResult(
        MATCH, AttackKind.STANDING_STILL, range(start, stop), float(stop - start)
    )


def attack_oracle(original: FlightSequence, tampered: FlightSequence) -> OracleResult:
    """Infer the attack kind and attacked range from a pair of flights.

    Raises:
        InvalidAttackError: If the flights differ in length
    """
    if len(original) != len(tampered):
        raise InvalidAttackError(
            f"flights differ in length: {len(original)} and {len(tampered)}"
        )
    if not np.array_equal(original.times(), tampered.times()):
        return OracleResult(AMBIGUOUS, reason="timestamps differ")
    a, b = original.to_matrix(), tampered.to_matrix()
    changed = a != b
    features = {FEATURES[j] for j in np.flatnonzero(changed.any(axis=0))}
    if not features:
        return OracleResult(NO_DIFFERENCE)

    rows = np.flatnonzero(changed.any(axis=1))
    if len(features) == 1 and next(iter(features)) in _DRIFT_BY_FEATURE:
        (feature,) = features
        column = FEATURE_INDEX[feature]
        result = _drift(feature, a[:, column], b[:, column], rows)
        if result.status == MATCH or feature != "groundspeed":
            return result
    if features <= _STILL_FEATURES:
        return _standing_still(a, b, rows)
    return OracleResult(AMBIGUOUS, reason=f"several features changed: {sorted(features)}")
