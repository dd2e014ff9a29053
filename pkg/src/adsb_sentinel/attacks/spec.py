"""
Attack kinds, specifications and class labels.
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from adsb_sentinel.attacks.errors import InvalidAttackError


class AttackKind(str, Enum):
    ALTITUDE_DRIFT = "altitude_drift"
    GROUNDSPEED_DRIFT = "groundspeed_drift"
    HEADING_DRIFT = "heading_drift"
    STANDING_STILL = "standing_still"

    @property
    def is_drift(self) -> bool:
        return self is not AttackKind.STANDING_STILL

    @property
    def feature(self) -> Optional[str]:
        """The feature a drift tampers with."""
        return _DRIFT_FEATURES.get(self)


_DRIFT_FEATURES = {
    AttackKind.ALTITUDE_DRIFT: "altitude",
    AttackKind.GROUNDSPEED_DRIFT: "groundspeed",
    AttackKind.HEADING_DRIFT: "heading",
}

DRIFT_KINDS = (
    AttackKind.ALTITUDE_DRIFT,
    AttackKind.GROUNDSPEED_DRIFT,
    AttackKind.HEADING_DRIFT,
)

# Per-message increments: feet, knots, degrees.
DEFAULT_DELTAS = {
    AttackKind.ALTITUDE_DRIFT: 82.0,
    AttackKind.GROUNDSPEED_DRIFT: 1.9,
    AttackKind.HEADING_DRIFT: 1.0,
}
DEFAULT_STANDING_STILL_LENGTH = 20

# Short command-line names.
ATTACK_ALIASES = {
    "alt": AttackKind.ALTITUDE_DRIFT,
    "gs": AttackKind.GROUNDSPEED_DRIFT,
    "hdg": AttackKind.HEADING_DRIFT,
    "still": AttackKind.STANDING_STILL,
}

# Multiclass labels. Standing still is never trained on; it only appears in
# unseen-attack evaluation.
CLASSES = ("ALT", "GS", "HDG", "GN")
CLASS_IDS = {name: i for i, name in enumerate(CLASSES)}
STANDING_STILL_CLASS = 4

# Flight groups in Dataset B/C order; the group index is the class id.
GROUPS = ("altitude", "groundspeed", "heading", "benign")
GROUP_KINDS: dict[str, Optional[AttackKind]] = {
    "altitude": AttackKind.ALTITUDE_DRIFT,
    "groundspeed": AttackKind.GROUNDSPEED_DRIFT,
    "heading": AttackKind.HEADING_DRIFT,
    "benign": None,
}
CLASSIFIER_GROUPS = dict(zip((c.lower() for c in CLASSES), GROUPS))


def parse_attack_kind(value: str) -> AttackKind:
    if value in ATTACK_ALIASES:
        return ATTACK_ALIASES[value]
    try:
        return AttackKind(value)
    except ValueError as e:
        raise InvalidAttackError(f"unknown attack kind: {value!r}") from e


@dataclass(frozen=True)
class AttackSpec:
    """What to inject and where.

    ``delta`` is the per-message increment for drifts and the number of frozen
    messages for standing still.
    """

    kind: AttackKind
    delta: float
    start_index: int = 0

    def __post_init__(self):
        if not isinstance(self.kind, AttackKind):
            object.__setattr__(self, "kind", parse_attack_kind(self.kind))
        if self.start_index < 0:
            raise InvalidAttackError(f"start_index must be >= 0, got {self.start_index}")
        if self.kind.is_drift:
            if not (math.isfinite(self.delta) and self.delta > 0):
                raise InvalidAttackError(f"drift delta must be positive, got {self.delta}")
        elif int(self.delta) != self.delta or self.delta < 2:
            raise InvalidAttackError(
                f"standing-still length must be an integer >= 2, got {self.delta}"
            )

    @property
    def span(self) -> Optional[int]:
        """Number of attacked messages for standing still; drifts run to flight end."""
        return None if self.kind.is_drift else int(self.delta)

    @classmethod
    def default(cls, kind: AttackKind, start_index: int = 0) -> "AttackSpec":
        delta = DEFAULT_DELTAS.get(kind, DEFAULT_STANDING_STILL_LENGTH)
        return cls(kind=kind, delta=float(delta), start_index=start_index)

    def to_dict(self) -> dict:
        return {"kind": self.kind.value, "delta": self.delta, "start_index": self.start_index}
