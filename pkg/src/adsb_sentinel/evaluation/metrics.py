"""
Confusion matrices and the metrics derived from them.

Binary metrics treat the attack class as positive:

    precision = TP / (TP + FP)        recall = TP / (TP + FN)
    F1 = 2PR / (P + R)                FAR = FP / (FP + TN)
    FNR = FN / (FN + TP)              accuracy = (TP + TN) / total

A metric whose denominator is zero is reported as 0 and listed in
``degenerate``. Multiclass metrics macro-average the one-vs-rest values of
every class; accuracy is the trace over the total.
"""

from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Any, Optional

import numpy as np

BINARY_LABELS = ("benign", "attack")
METRIC_NAMES = ("accuracy", "precision", "recall", "f1", "far", "fnr")


@dataclass
class ConfusionMatrix:
    """Counts indexed by (true class, predicted class).

    ``positive`` marks the index of the positive class for binary use.
    """

    labels: tuple[str, ...]
    counts: np.ndarray
    positive: Optional[int] = None

    def __post_init__(self):
        self.counts = np.asarray(self.counts, dtype=np.int64)
        k = len(self.labels)
        if self.counts.shape != (k, k):
            raise ValueError(f"counts shape {self.counts.shape} does not match {k} labels")
        if np.any(self.counts < 0):
            raise ValueError("confusion counts must be non-negative")

    @classmethod
    def binary(cls, tp: int, fp: int, fn: int, tn: int) -> "ConfusionMatrix":
        return cls(BINARY_LABELS, np.array([[tn, fp], [fn, tp]]), positive=1)

    @classmethod
    def from_predictions(
        cls,
        true: Sequence[int],
        predicted: Sequence[int],
        labels: Sequence[str],
        positive: Optional[int] = None,
    ) -> "ConfusionMatrix":
        counts = np.zeros((len(labels), len(labels)), dtype=np.int64)
        np.add.at(counts, (np.asarray(true, int), np.asarray(predicted, int)), 1)
        return cls(tuple(labels), counts, positive)

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    def one_vs_rest(self, index: int) -> tuple[int, int, int, int]:
        """(TP, FP, FN, TN) with class ``index`` as positive."""
        tp = int(self.counts[index, index])
        fp = int(self.counts[:, index].sum()) - tp
        fn = int(self.counts[index, :].sum()) - tp
        return tp, fp, fn, self.total - tp - fp - fn

    @property
    def tp(self) -> int:
        return self.one_vs_rest(self._positive())[0]

    @property
    def fp(self) -> int:
        return self.one_vs_rest(self._positive())[1]

    @property
    def fn(self) -> int:
        return self.one_vs_rest(self._positive())[2]

    @property
    def tn(self) -> int:
        return self.one_vs_rest(self._positive())[3]

    def _positive(self) -> int:
        if self.positive is None:
            raise ValueError("confusion matrix has no positive class")
        return self.positive

    def to_dict(self) -> dict[str, Any]:
        return {
            "labels": list(self.labels),
            "counts": self.counts.tolist(),
            "positive": self.positive,
        }


@dataclass
class MetricSet:
    accuracy: float
    precision: float
    recall: float
    f1: float
    far: float
    fnr: float
    degenerate: list[str] = field(default_factory=list)

    def to_dict(self) -> dict[str, Any]:
        data = {name: getattr(self, name) for name in METRIC_NAMES}
        data["degenerate"] = list(self.degenerate)
        return data


def _ratio(numerator: float, denominator: float, name: str, degenerate: list[str]) -> float:
    if denominator == 0:
        degenerate.append(name)
        return 0.0
    return numerator / denominator


def binary_metrics(tp: int, fp: int, fn: int, tn: int) -> MetricSet:
    degenerate: list[str] = []
    precision = _ratio(tp, tp + fp, "precision", degenerate)
    recall = _ratio(tp, tp + fn, "recall", degenerate)
    f1 = _ratio(2 * precision * recall, precision + recall, "f1", degenerate)
    far = _ratio(fp, fp + tn, "far", degenerate)
    fnr = _ratio(fn, fn + tp, "fnr", degenerate)
    accuracy = _ratio(tp + tn, tp + tn + fp + fn, "accuracy", degenerate)
    return MetricSet(accuracy, precision, recall, f1, far, fnr, degenerate)


def per_class_metrics(cm: ConfusionMatrix) -> dict[str, MetricSet]:
    return {label: binary_metrics(*cm.one_vs_rest(i)) for i, label in enumerate(cm.labels)}


def compute_metrics(cm: ConfusionMatrix) -> MetricSet:
    """Binary metrics when ``cm.positive`` is set, macro-averaged ones otherwise."""
    if cm.positive is not None:
        return binary_metrics(cm.tp, cm.fp, cm.fn, cm.tn)

    per_class = per_class_metrics(cm)
    degenerate = [
        f"{name}[{label}]" for label, metrics in per_class.items() for name in metrics.degenerate
    ]
    values = {
        name: float(np.mean([getattr(m, name) for m in per_class.values()]))
        for name in ("precision", "recall", "f1", "far", "fnr")
    }
    total = cm.total
    if total == 0:
        degenerate.append("accuracy")
    accuracy = float(np.trace(cm.counts)) / total if total else 0.0
    return MetricSet(accuracy=accuracy, degenerate=degenerate, **values)
