"""
Ensemble evaluation over labelled windows.
"""

import time
from collections.abc import Sequence
from typing import Optional

import numpy as np

from adsb_sentinel.attacks.spec import CLASS_IDS, CLASSES, STANDING_STILL_CLASS
from adsb_sentinel.concurrency import parallel_map
from adsb_sentinel.data.windows import FeatureWindow, stack_windows
from adsb_sentinel.evaluation.ensemble import EnsembleIDS
from adsb_sentinel.evaluation.errors import EvaluationError
from adsb_sentinel.evaluation.latency import LatencyStats
from adsb_sentinel.evaluation.metrics import (
    ConfusionMatrix,
    compute_metrics,
    per_class_metrics,
)
from adsb_sentinel.evaluation.report import EvalReport, PredictionRecord
from adsb_sentinel.telemetry import get_telemetry

tracer, logger = get_telemetry("adsb_sentinel.evaluation")

BATCH = 64
BENIGN = CLASS_IDS["GN"]


def _labels(windows: Sequence[FeatureWindow], unseen: bool) -> np.ndarray:
    allowed = set(range(len(CLASSES))) | ({STANDING_STILL_CLASS} if unseen else set())
    labels = []
    for i, w in enumerate(windows):
        if w.label not in allowed:
            raise EvaluationError(
                f"window {i} has label {w.label!r}; expected one of {sorted(allowed)}"
            )
        labels.append(int(w.label))
    return np.array(labels, dtype=int)


def _classify_all(
    ids: EnsembleIDS, values: np.ndarray, measure_latency: bool, workers: Optional[int]
) -> tuple[np.ndarray, np.ndarray, Optional[list[float]]]:
    if measure_latency:
        classes, probs, latencies = [], [], []
        for i in range(len(values)):
            started = time.perf_counter()
            c, p = ids.classify_batch(values[i : i + 1])
            latencies.append(time.perf_counter() - started)
            classes.append(c)
            probs.append(p)
        return np.concatenate(classes), np.concatenate(probs), latencies
    chunks = [slice(s, s + BATCH) for s in range(0, len(values), BATCH)]
    results = parallel_map(lambda chunk: ids.classify_batch(values[chunk]), chunks, workers)
    return (
        np.concatenate([c for c, _ in results]),
        np.concatenate([p for _, p in results]),
        None,
    )


def evaluate(
    ids: EnsembleIDS,
    windows: Sequence[FeatureWindow],
    unseen: bool = False,
    measure_latency: bool = False,
    workers: Optional[int] = None,
) -> EvalReport:
    """Classify raw-unit labelled windows and score the ensemble.

    In unseen-attack mode any window whose true label is not benign is an
    attack, and it counts as detected when the predicted class is not GN.

    Args:
        ids: The ensemble
        windows: Labelled windows in raw units
        unseen: Score as attack-vs-benign instead of four-way classification
        measure_latency: Classify one window at a time on this thread and
            record per-window latency
        workers: Worker threads for batched classification
    """
    if not windows:
        raise EvaluationError("no windows to evaluate")
    true = _labels(windows, unseen)
    mode = "unseen" if unseen else "multiclass"
    with tracer.start_as_current_span("evaluate", {"mode": mode, "windows": len(windows)}):
        values = ids.normalize(stack_windows(windows))
        predicted, probs, latencies = _classify_all(ids, values, measure_latency, workers)

    if unseen:
        is_attack, flagged = true != BENIGN, predicted != BENIGN
        confusion = ConfusionMatrix.binary(
            tp=int(np.sum(is_attack & flagged)),
            fp=int(np.sum(~is_attack & flagged)),
            fn=int(np.sum(is_attack & ~flagged)),
            tn=int(np.sum(~is_attack & ~flagged)),
        )
        per_class = {}
        predicted_by_class = {
            name: int(np.sum(predicted[true == STANDING_STILL_CLASS] == i))
            for i, name in enumerate(CLASSES)
        }
        details = {"standing_still_predictions": predicted_by_class}
    else:
        confusion = ConfusionMatrix.from_predictions(true, predicted, CLASSES)
        per_class = per_class_metrics(confusion)
        details = {}

    records = [
        PredictionRecord(
            flight_id=w.flight_id,
            start=w.start,
            true=int(true[i]),
            predicted=int(predicted[i]),
            probabilities=[float(p) for p in probs[i]],
            latency=None if latencies is None else latencies[i],
        )
        for i, w in enumerate(windows)
    ]
    details["architecture"] = ids.architecture
    report = EvalReport(
        mode=mode,
        confusion=confusion,
        metrics=compute_metrics(confusion),
        per_class=per_class,
        latency=LatencyStats.from_samples(latencies) if latencies else None,
        predictions=records,
        details=details,
    )
    logger.info(
        "evaluate.complete",
        mode=mode,
        windows=len(windows),
        accuracy=report.metrics.accuracy,
        f1=report.metrics.f1,
        far=report.metrics.far,
    )
    return report

