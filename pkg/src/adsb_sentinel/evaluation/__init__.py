"""Ensemble IDS, reconstruction baseline, metrics, reports and latency."""

from adsb_sentinel.evaluation.ensemble import (
    DEFAULT_WINDOW_LENGTH,
    EnsembleIDS,
    argmax_class,
    classify,
    load_ensemble,
)
from adsb_sentinel.evaluation.errors import (
    EnsembleMismatchError,
    EvaluationError,
    MissingCheckpointError,
    NotCalibratedError,
    WindowLengthError,
)
from adsb_sentinel.evaluation.evaluate import evaluate
from adsb_sentinel.evaluation.latency import (
    SSR_REFRESH_MAX,
    SSR_REFRESH_MIN,
    BenchResult,
    LatencyStats,
    bench_latency,
)
from adsb_sentinel.evaluation.metrics import (
    BINARY_LABELS,
    ConfusionMatrix,
    MetricSet,
    binary_metrics,
    compute_metrics,
    per_class_metrics,
)
from adsb_sentinel.evaluation.reconstruction import (
    ReconstructionDetector,
    reconstruction_detector,
)
from adsb_sentinel.evaluation.report import EvalReport, PredictionRecord

__all__ = [
    "EnsembleIDS",
    "argmax_class",
    "classify",
    "load_ensemble",
    "DEFAULT_WINDOW_LENGTH",
    "evaluate",
    "ReconstructionDetector",
    "reconstruction_detector",
    "ConfusionMatrix",
    "MetricSet",
    "BINARY_LABELS",
    "binary_metrics",
    "compute_metrics",
    "per_class_metrics",
    "EvalReport",
    "PredictionRecord",
    "LatencyStats",
    "BenchResult",
    "bench_latency",
    "SSR_REFRESH_MIN",
    "SSR_REFRESH_MAX",
    "EvaluationError",
    "NotCalibratedError",
    "MissingCheckpointError",
    "EnsembleMismatchError",
    "WindowLengthError",
]
