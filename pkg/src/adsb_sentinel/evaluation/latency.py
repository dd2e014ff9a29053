"""
Inference latency benchmarking.

Latency is wall-clock time per window through the whole ensemble, measured on
one thread after a warm-up pass. The report places the mean against the
5-12 s refresh interval of secondary surveillance radar.
"""

import time
from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from adsb_sentinel.data.windows import FeatureWindow, stack_windows
from adsb_sentinel.evaluation.ensemble import EnsembleIDS
from adsb_sentinel.evaluation.errors import EvaluationError
from adsb_sentinel.telemetry import get_telemetry

tracer, logger = get_telemetry("adsb_sentinel.evaluation.latency")

SSR_REFRESH_MIN = 5.0
SSR_REFRESH_MAX = 12.0


@dataclass
class LatencyStats:
    """Per-window latency in seconds."""

    mean: float
    p50: float
    p95: float
    max: float
    count: int
    within_ssr_window: bool
    under_ssr_minimum: bool

    @classmethod
    def from_samples(cls, samples: Sequence[float]) -> "LatencyStats":
        if len(samples) == 0:
            raise EvaluationError("no latency samples")
        values = np.asarray(samples, dtype=np.float64)
        mean = float(values.mean())
        p50, p95 = (float(v) for v in np.percentile(values, [50, 95]))
        return cls(
            mean=mean,
            p50=p50,
            p95=p95,
            max=float(values.max()),
            count=int(values.size),
            within_ssr_window=SSR_REFRESH_MIN <= mean <= SSR_REFRESH_MAX,
            under_ssr_minimum=mean < SSR_REFRESH_MIN,
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "mean": self.mean,
            "p50": self.p50,
            "p95": self.p95,
            "max": self.max,
            "count": self.count,
            "within_ssr_window": self.within_ssr_window,
            "under_ssr_minimum": self.under_ssr_minimum,
            "ssr_window_seconds": [SSR_REFRESH_MIN, SSR_REFRESH_MAX],
        }


@dataclass
class BenchResult:
    stats: LatencyStats
    predictions: list[int] = field(default_factory=list)
    architecture: str = ""
    repetitions: int = 1

    def to_dict(self) -> dict[str, Any]:
        return {
            "architecture": self.architecture,
            "repetitions": self.repetitions,
            "latency": self.stats.to_dict(),
            "predictions": list(self.predictions),
        }


def bench_latency(
    ids: EnsembleIDS,
    windows: Sequence[FeatureWindow],
    repetitions: int = 1,
    warmup: int = 1,
) -> BenchResult:
    """Time ensemble classification of every window, ``repetitions`` times over.

    Args:
        ids: The ensemble, in evaluation mode
        windows: Raw-unit windows of the ensemble's length
        repetitions: Passes over the windows; every pass adds one sample per window
        warmup: Untimed classifications run before measuring

    Returns:
        Latency statistics and the predicted class of every window (last pass)
    """
    if repetitions < 1:
        raise EvaluationError(f"repetitions must be at least 1, got {repetitions}")
    values = ids.normalize(stack_windows(windows))
    with tracer.start_as_current_span(
        "bench", {"windows": len(values), "repetitions": repetitions}
    ):
        for i in range(min(warmup, len(values))):
            ids.classify_batch(values[i : i + 1])

        samples: list[float] = []
        predictions: list[int] = []
        for _ in range(repetitions):
            predictions = []
            for i in range(len(values)):
                started = time.perf_counter()
                classes, _ = ids.classify_batch(values[i : i + 1])
                samples.append(time.perf_counter() - started)
                predictions.append(int(classes[0]))

    stats = LatencyStats.from_samples(samples)
    logger.info("bench.complete", mean=stats.mean, p95=stats.p95, count=stats.count)
    return BenchResult(stats, predictions, ids.architecture, repetitions)
