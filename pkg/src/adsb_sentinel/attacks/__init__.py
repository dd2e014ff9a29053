"""Attack injection, the injection oracle and labelled dataset builders."""

from adsb_sentinel.attacks.datasets import (
    MIN_FLIGHTS,
    SPLITS,
    FlightAssignment,
    LabeledDatasetB,
    LabeledDatasetC,
    LabeledSubset,
    UnseenAttackSet,
    build_dataset_b,
    build_dataset_c,
    build_unseen_set,
    is_attacked_window,
    split_flights,
)
from adsb_sentinel.attacks.errors import (
    AttackError,
    InsufficientFlightsError,
    InvalidAttackError,
)
from adsb_sentinel.attacks.inject import (
    attack_start_index,
    inject,
    inject_gradual,
    inject_standing_still,
)
from adsb_sentinel.attacks.io import (
    label_counts,
    read_windows_csv,
    write_dataset_manifest,
    write_windows_csv,
)
from adsb_sentinel.attacks.oracle import (
    AMBIGUOUS,
    MATCH,
    NO_DIFFERENCE,
    OracleResult,
    attack_oracle,
)
from adsb_sentinel.attacks.spec import (
    ATTACK_ALIASES,
    CLASS_IDS,
    CLASSES,
    CLASSIFIER_GROUPS,
    DEFAULT_DELTAS,
    DEFAULT_STANDING_STILL_LENGTH,
    DRIFT_KINDS,
    GROUPS,
    STANDING_STILL_CLASS,
    AttackKind,
    AttackSpec,
    parse_attack_kind,
)

__all__ = [
    "AttackKind",
    "AttackSpec",
    "parse_attack_kind",
    "ATTACK_ALIASES",
    "DEFAULT_DELTAS",
    "DEFAULT_STANDING_STILL_LENGTH",
    "DRIFT_KINDS",
    "CLASSES",
    "CLASS_IDS",
    "CLASSIFIER_GROUPS",
    "GROUPS",
    "STANDING_STILL_CLASS",
    "inject",
    "inject_gradual",
    "inject_standing_still",
    "attack_start_index",
    "attack_oracle",
    "OracleResult",
    "MATCH",
    "NO_DIFFERENCE",
    "AMBIGUOUS",
    "build_dataset_b",
    "build_dataset_c",
    "build_unseen_set",
    "is_attacked_window",
    "split_flights",
    "FlightAssignment",
    "LabeledSubset",
    "LabeledDatasetB",
    "LabeledDatasetC",
    "UnseenAttackSet",
    "MIN_FLIGHTS",
    "SPLITS",
    "write_windows_csv",
    "read_windows_csv",
    "write_dataset_manifest",
    "label_counts",
    "AttackError",
    "InvalidAttackError",
    "InsufficientFlightsError",
]
