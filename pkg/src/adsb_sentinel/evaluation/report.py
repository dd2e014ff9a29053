"""
Evaluation reports: JSON, a human-readable table, and per-window CSV.
"""

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional, Union

import pandas as pd

from adsb_sentinel.evaluation.latency import LatencyStats
from adsb_sentinel.evaluation.metrics import (
    METRIC_NAMES,
    ConfusionMatrix,
    MetricSet,
    compute_metrics,
)


@dataclass
class PredictionRecord:
    flight_id: str
    start: int
    true: int
    predicted: int
    probabilities: list[float] = field(default_factory=list)
    latency: Optional[float] = None


@dataclass
class EvalReport:
    """Confusion matrix, derived metrics and optional latency for one run.

    ``mode`` is ``multiclass``, ``unseen`` or ``reconstruction``.
    """

    mode: str
    confusion: ConfusionMatrix
    metrics: MetricSet
    per_class: dict[str, MetricSet] = field(default_factory=dict)
    latency: Optional[LatencyStats] = None
    predictions: list[PredictionRecord] = field(default_factory=list)
    details: dict[str, Any] = field(default_factory=dict)

    def recomputed(self) -> MetricSet:
        """Metrics derived afresh from the stored confusion matrix."""
        return compute_metrics(self.confusion)

    def to_dict(self) -> dict[str, Any]:
        return {
            "mode": self.mode,
            "confusion": self.confusion.to_dict(),
            "metrics": self.metrics.to_dict(),
            "per_class": {name: m.to_dict() for name, m in self.per_class.items()},
            "latency": self.latency.to_dict() if self.latency else None,
            "windows": self.confusion.total,
            "details": self.details,
        }

    def write_json(self, path: Union[str, Path]) -> None:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n", "utf-8")

    def render_table(self) -> str:
        labels = self.confusion.labels
        width = max(10, *(len(label) + 2 for label in labels))
        lines = [f"Evaluation ({self.mode}, {self.confusion.total} windows)", ""]
        lines.append("true \\ pred".ljust(width) + "".join(label.rjust(width) for label in labels))
        for label, row in zip(labels, self.confusion.counts):
            lines.append(label.ljust(width) + "".join(str(c).rjust(width) for c in row))
        lines.append("")
        lines.append("".ljust(width) + "".join(name.rjust(width) for name in METRIC_NAMES))
        rows = [("overall", self.metrics)] + list(self.per_class.items())
        for name, metrics in rows:
            lines.append(
                name.ljust(width)
                + "".join(f"{getattr(metrics, m):.4f}".rjust(width) for m in METRIC_NAMES)
            )
        if self.metrics.degenerate:
            lines.append("degenerate (zero denominator): " + ", ".join(self.metrics.degenerate))
        if self.latency is not None:
            lat = self.latency
            lines.append("")
            lines.append(
                f"latency per window: mean {lat.mean:.4f}s p50 {lat.p50:.4f}s "
                f"p95 {lat.p95:.4f}s max {lat.max:.4f}s"
            )
            lines.append(
                f"SSR refresh interval 5-12 s: within={lat.within_ssr_window} "
                f"under 5 s={lat.under_ssr_minimum}"
            )
        return "\n".join(lines)

    def write_predictions_csv(self, path: Union[str, Path], class_names: tuple[str, ...]) -> None:
        """One row per window: identity, true and predicted class, probabilities, latency."""
        rows = []
        for i, rec in enumerate(self.predictions):
            row = {
                "window_id": i,
                "flight_id": rec.flight_id,
                "start": rec.start,
                "true": rec.true,
                "predicted": rec.predicted,
            }
            for name, p in zip(class_names, rec.probabilities):
                row[f"p_{name}"] = p
            row["latency"] = rec.latency
            rows.append(row)
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        pd.DataFrame(rows).to_csv(path, index=False, lineterminator="\n")
