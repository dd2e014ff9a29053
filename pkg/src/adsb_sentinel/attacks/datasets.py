"""
Labelled dataset assembly.

Flights are split into train and test BEFORE windowing, so no flight
contributes windows to both. The same split selects the flights used for
pre-training and the test flights of the unseen-attack set. Within each split,
flights are shuffled and assigned round-robin to the four groups (altitude,
groundspeed, heading, benign); one assignment is shared by every Dataset B
subset and by Dataset C.

Windows keep raw units. Models normalise them with the statistics stored in
their checkpoint.
"""

from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from typing import Any, Optional

import numpy as np

from adsb_sentinel.attacks.errors import InsufficientFlightsError
from adsb_sentinel.attacks.inject import attack_start_index, inject
from adsb_sentinel.attacks.spec import (
    DEFAULT_DELTAS,
    DEFAULT_STANDING_STILL_LENGTH,
    GROUP_KINDS,
    GROUPS,
    STANDING_STILL_CLASS,
    AttackKind,
    AttackSpec,
)
from adsb_sentinel.concurrency import parallel_map
from adsb_sentinel.data.records import FlightSequence
from adsb_sentinel.data.windows import FeatureWindow, window
from adsb_sentinel.telemetry import get_telemetry

tracer, logger = get_telemetry("adsb_sentinel.attacks.datasets")

SPLITS = ("train", "test")
DEFAULT_SPLIT = 0.8
# Four groups in a 20 % test split need at least one flight each.
MIN_FLIGHTS = 20


@dataclass(frozen=True)
class FlightAssignment:
    flight_id: str
    split: str
    group: str
    spec: Optional[AttackSpec]
    attacked: Optional[range]

    def to_dict(self) -> dict[str, Any]:
        return {
            "flight_id": self.flight_id,
            "split": self.split,
            "group": self.group,
            "attack": self.spec.to_dict() if self.spec else None,
            "attacked": [self.attacked.start, self.attacked.stop] if self.attacked else None,
        }


@dataclass
class LabeledSubset:
    """One binary one-vs-rest task: windows labelled 1 for the target group."""

    name: str
    train: list[FeatureWindow] = field(default_factory=list)
    test: list[FeatureWindow] = field(default_factory=list)

    def split(self, name: str) -> list[FeatureWindow]:
        return self.train if name == "train" else self.test


@dataclass
class LabeledDatasetB:
    subsets: dict[str, LabeledSubset]
    assignments: list[FlightAssignment]
    length: int
    seed: int


@dataclass
class LabeledDatasetC:
    """Multiclass windows labelled 0 altitude, 1 groundspeed, 2 heading, 3 benign."""

    train: list[FeatureWindow]
    test: list[FeatureWindow]
    assignments: list[FlightAssignment]
    length: int
    seed: int

    def split(self, name: str) -> list[FeatureWindow]:
        return self.train if name == "train" else self.test


@dataclass
class UnseenAttackSet:
    """Standing-still windows (class 4) mixed 1:1 with benign windows (class 3)."""

    windows: list[FeatureWindow]
    assignments: list[FlightAssignment]
    length: int
    seed: int


def is_attacked_window(start: int, length: int, attacked: range) -> bool:
    """A window counts as attacked when at least half of min(length, span) rows overlap."""
    span = len(attacked)
    overlap = min(start + length, attacked.stop) - max(start, attacked.start)
    return span > 0 and 2 * overlap >= min(length, span)


def split_flights(
    flights: Sequence[FlightSequence], seed: int, split: float = DEFAULT_SPLIT
) -> dict[str, list[FlightSequence]]:
    """Seeded train/test split of whole flights.

    The split depends only on ``seed``, ``split`` and the order of ``flights``,
    so pre-training and every dataset builder agree on it whatever window
    length each of them later filters by.
    """
    if not 0.0 < split < 1.0:
        raise ValueError(f"split must lie in (0, 1), got {split}")
    order = np.random.default_rng([seed, 0]).permutation(len(flights))
    n_train = int(round(split * len(flights)))
    shuffled = [flights[i] for i in order]
    return {"train": shuffled[:n_train], "test": shuffled[n_train:]}


def _usable_splits(
    flights: Sequence[FlightSequence], length: int, seed: int, split: float
) -> dict[str, list[FlightSequence]]:
    splits = {
        name: [f for f in members if len(f) >= length]
        for name, members in split_flights(flights, seed, split).items()
    }
    usable = sum(len(members) for members in splits.values())
    if usable < MIN_FLIGHTS:
        raise InsufficientFlightsError(MIN_FLIGHTS, usable, length)
    return splits


def _resolve_deltas(deltas: Optional[Mapping[AttackKind, float]]) -> dict[AttackKind, float]:
    resolved = dict(DEFAULT_DELTAS)
    resolved.update(deltas or {})
    return resolved


def _assign_groups(
    flights: Sequence[FlightSequence],
    length: int,
    seed: int,
    split: float,
    deltas: dict[AttackKind, float],
) -> list[tuple[FlightSequence, str, str, Optional[AttackSpec]]]:
    jobs = []
    for split_name, members in _usable_splits(flights, length, seed, split).items():
        for i, flight in enumerate(members):
            group = GROUPS[i % len(GROUPS)]
            kind = GROUP_KINDS[group]
            spec = None
            if kind is not None:
                spec = AttackSpec(kind, deltas[kind], attack_start_index(flight, seed))
            jobs.append((flight, split_name, group, spec))
    return jobs


def _flight_windows(
    flight: FlightSequence, spec: Optional[AttackSpec], length: int, stride: int, label: int
) -> tuple[list[FeatureWindow], Optional[range]]:
    if spec is None:
        return window(flight.to_matrix(), length, stride, flight.flight_id, label=label), None
    tampered, attacked = inject(flight, spec)
    windows = [
        w
        for w in window(tampered.to_matrix(), length, stride, flight.flight_id, label=label)
        if is_attacked_window(w.start, length, attacked)
    ]
    return windows, attacked


def _windows_by_group(
    flights: Sequence[FlightSequence],
    length: int,
    seed: int,
    split: float,
    deltas: Optional[Mapping[AttackKind, float]],
    stride: int,
) -> tuple[dict[str, dict[str, list[FeatureWindow]]], list[FlightAssignment]]:
    jobs = _assign_groups(flights, length, seed, split, _resolve_deltas(deltas))
    results = parallel_map(
        lambda job: _flight_windows(job[0], job[3], length, stride, GROUPS.index(job[2])),
        jobs,
    )
    pools: dict[str, dict[str, list[FeatureWindow]]] = {
        s: {g: [] for g in GROUPS} for s in SPLITS
    }
    assignments = []
    for (flight, split_name, group, spec), (windows, attacked) in zip(jobs, results):
        pools[split_name][group].extend(windows)
        assignments.append(FlightAssignment(flight.flight_id, split_name, group, spec, attacked))
    return pools, assignments


def _sample(
    windows: list[FeatureWindow], count: int, rng: np.random.Generator
) -> list[FeatureWindow]:
    picked = sorted(rng.choice(len(windows), size=count, replace=False).tolist())
    return [windows[i] for i in picked]


def _relabel(windows: list[FeatureWindow], label: int) -> list[FeatureWindow]:
    return [
        FeatureWindow(w.values, w.flight_id, w.start, label=label, target=w.target)
        for w in windows
    ]


def _one_vs_rest(
    pools: dict[str, list[FeatureWindow]], target: str, rng: np.random.Generator
) -> list[FeatureWindow]:
    others = [g for g in GROUPS if g != target]
    positives = pools[target]
    count = min(len(positives), 3 * min(len(pools[g]) for g in others))
    if count == 0:
        return []
    shares = [count // 3 + (1 if i < count % 3 else 0) for i in range(3)]
    negatives = []
    for group, share in zip(others, shares):
        negatives.extend(_sample(pools[group], share, rng))
    return _relabel(_sample(positives, count, rng), 1) + _relabel(negatives, 0)


def build_dataset_b(
    flights: Sequence[FlightSequence],
    length: int,
    seed: int,
    split: float = DEFAULT_SPLIT,
    deltas: Optional[Mapping[AttackKind, float]] = None,
    stride: int = 1,
) -> LabeledDatasetB:
    """Assemble the four one-vs-rest subsets.

    Each subset holds equal numbers of positives (windows of its target group)
    and negatives (equal thirds from the other three groups).

    Raises:
        InsufficientFlightsError: If fewer than ``MIN_FLIGHTS`` flights cover ``length``
    """
    with tracer.start_as_current_span("dataset_b.build", {"seed": seed, "length": length}):
        pools, assignments = _windows_by_group(flights, length, seed, split, deltas, stride)
        subsets = {}
        for g_index, group in enumerate(GROUPS):
            subset = LabeledSubset(group)
            for s_index, split_name in enumerate(SPLITS):
                rng = np.random.default_rng([seed, 1, g_index, s_index])
                subset.split(split_name).extend(_one_vs_rest(pools[split_name], group, rng))
            subsets[group] = subset
        logger.info(
            "dataset_b.built",
            seed=seed,
            length=length,
            **{f"{g}_{s}": len(subsets[g].split(s)) for g in GROUPS for s in SPLITS},
        )
        return LabeledDatasetB(subsets, assignments, length, seed)


def build_dataset_c(
    flights: Sequence[FlightSequence],
    length: int,
    seed: int,
    split: float = DEFAULT_SPLIT,
    deltas: Optional[Mapping[AttackKind, float]] = None,
    stride: int = 1,
) -> LabeledDatasetC:
    """Assemble multiclass windows with every class cut down to the smallest one."""
    with tracer.start_as_current_span("dataset_c.build", {"seed": seed, "length": length}):
        pools, assignments = _windows_by_group(flights, length, seed, split, deltas, stride)
        splits = {}
        for s_index, split_name in enumerate(SPLITS):
            rng = np.random.default_rng([seed, 2, s_index])
            per_class = min(len(pools[split_name][g]) for g in GROUPS)
            splits[split_name] = [
                w for g in GROUPS for w in _sample(pools[split_name][g], per_class, rng)
            ]
        logger.info(
            "dataset_c.built",
            seed=seed,
            length=length,
            train=len(splits["train"]),
            test=len(splits["test"]),
        )
        return LabeledDatasetC(splits["train"], splits["test"], assignments, length, seed)


def build_unseen_set(
    flights: Sequence[FlightSequence],
    length: int,
    seed: int,
    still_length: int = DEFAULT_STANDING_STILL_LENGTH,
    stride: int = 1,
    split: float = DEFAULT_SPLIT,
) -> UnseenAttackSet:
    """Standing-still windows and benign windows in equal numbers.

    Only test-split flights of ``split_flights(flights, seed, split)`` are used.
    Alternate flights (after a seeded shuffle) receive a standing-still attack;
    the rest stay benign.
    """
    test_flights = split_flights(flights, seed, split)["test"]
    usable = [f for f in test_flights if len(f) >= max(length, still_length + 1)]
    if len(usable) < 2:
        raise InsufficientFlightsError(2, len(usable), max(length, still_length + 1))
    order = np.random.default_rng([seed, 3]).permutation(len(usable))
    jobs = []
    for i, idx in enumerate(order):
        flight = usable[idx]
        spec = None
        if i % 2 == 0:
            start = attack_start_index(flight, seed, min_span=still_length)
            spec = AttackSpec(AttackKind.STANDING_STILL, float(still_length), start)
        jobs.append((flight, spec))

    results = parallel_map(
        lambda job: _flight_windows(
            job[0],
            job[1],
            length,
            stride,
            STANDING_STILL_CLASS if job[1] is not None else GROUPS.index("benign"),
        ),
        jobs,
    )
    still, benign, assignments = [], [], []
    for (flight, spec), (windows, attacked) in zip(jobs, results):
        (still if spec is not None else benign).extend(windows)
        group = "standing_still" if spec is not None else "benign"
        assignments.append(FlightAssignment(flight.flight_id, "test", group, spec, attacked))

    rng = np.random.default_rng([seed, 4])
    count = min(len(still), len(benign))
    windows = _sample(still, count, rng) + _sample(benign, count, rng)
    logger.info("unseen_set.built", seed=seed, length=length, windows=len(windows))
    return UnseenAttackSet(windows, assignments, length, seed)
