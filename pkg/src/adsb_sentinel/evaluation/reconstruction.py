"""
Forecast-error anomaly detector.

The pre-trained forecaster predicts every next row of a window; the window's
score is the mean squared error between those predictions and the rows that
actually followed. Windows scoring above mean + 3 std of benign calibration
scores are flagged.
"""

from collections.abc import Sequence
from typing import Optional

import numpy as np

from adsb_sentinel.attacks.spec import CLASS_IDS
from adsb_sentinel.concurrency import parallel_map
from adsb_sentinel.data.normalize import apply_normalizer
from adsb_sentinel.data.windows import FeatureWindow
from adsb_sentinel.evaluation.errors import EvaluationError, NotCalibratedError
from adsb_sentinel.evaluation.metrics import ConfusionMatrix, compute_metrics
from adsb_sentinel.evaluation.report import EvalReport, PredictionRecord
from adsb_sentinel.telemetry import LoggingFacade
from adsb_sentinel.training.checkpoint import Checkpoint, build_model_from_checkpoint
from adsb_sentinel.training.errors import HeadMismatchError

logger = LoggingFacade("adsb_sentinel.evaluation.reconstruction")

SIGMA_MULTIPLIER = 3.0
BENIGN = CLASS_IDS["GN"]


class ReconstructionDetector:
    """Threshold detector on one-step forecast error.

    Args:
        forecaster: A checkpoint with a forecast head
    """

    def __init__(self, forecaster: Checkpoint):
        if forecaster.head != "forecast":
            raise HeadMismatchError(
                f"reconstruction needs a forecast checkpoint, got a {forecaster.head} head"
            )
        self.model = build_model_from_checkpoint(forecaster)
        self.stats = forecaster.normalization
        self.threshold: Optional[float] = None
        self.calibration_mean: Optional[float] = None
        self.calibration_std: Optional[float] = None

    def score(self, window: np.ndarray) -> float:
        """Mean squared one-step forecast error over a raw-unit (L, 6) window."""
        values = apply_normalizer(self.stats, window)
        if values.shape[0] < 2:
            raise EvaluationError("reconstruction scoring needs windows of at least 2 rows")
        predicted = self.model.forecast_sequence(values)
        error = predicted[:-1] - values[1:]
        return float(np.mean(error * error))

    def scores(self, windows: Sequence[FeatureWindow]) -> np.ndarray:
        return np.array(parallel_map(lambda w: self.score(w.values), list(windows)))

    def calibrate(self, benign: Sequence[FeatureWindow]) -> float:
        """Set the threshold from benign windows and return it."""
        if not benign:
            raise EvaluationError("calibration needs at least one benign window")
        scores = self.scores(benign)
        self.calibration_mean = float(scores.mean())
        self.calibration_std = float(scores.std())
        self.threshold = self.calibration_mean + SIGMA_MULTIPLIER * self.calibration_std
        logger.info(
            "reconstruction.calibrated",
            windows=len(benign),
            mean=self.calibration_mean,
            std=self.calibration_std,
            threshold=self.threshold,
        )
        return self.threshold

    def detect(self, window: np.ndarray) -> tuple[float, bool]:
        """Score and verdict (True = anomalous) for one raw-unit window.

        Raises:
            NotCalibratedError: If ``calibrate`` has not been called
        """
        if self.threshold is None:
            raise NotCalibratedError("reconstruction detector used before calibration")
        score = self.score(window)
        return score, score > self.threshold

    def evaluate(self, windows: Sequence[FeatureWindow]) -> EvalReport:
        """Binary report over labelled windows; any non-benign label is an attack."""
        if self.threshold is None:
            raise NotCalibratedError("reconstruction detector used before calibration")
        if not windows:
            raise EvaluationError("no windows to evaluate")
        scores = self.scores(windows)
        flagged = scores > self.threshold
        is_attack = np.array([w.label != BENIGN for w in windows])
        confusion = ConfusionMatrix.binary(
            tp=int(np.sum(is_attack & flagged)),
            fp=int(np.sum(~is_attack & flagged)),
            fn=int(np.sum(is_attack & ~flagged)),
            tn=int(np.sum(~is_attack & ~flagged)),
        )
        records = [
            PredictionRecord(
                flight_id=w.flight_id,
                start=w.start,
                true=int(is_attack[i]),
                predicted=int(flagged[i]),
                probabilities=[float(scores[i])],
            )
            for i, w in enumerate(windows)
        ]
        return EvalReport(
            mode="reconstruction",
            confusion=confusion,
            metrics=compute_metrics(confusion),
            predictions=records,
            details={
                "threshold": self.threshold,
                "calibration_mean": self.calibration_mean,
                "calibration_std": self.calibration_std,
                "architecture": self.model.config.architecture,
            },
        )


def reconstruction_detector(
    forecaster: Checkpoint,
    benign_validation: Sequence[FeatureWindow],
    window: np.ndarray,
) -> tuple[float, bool]:
    """Calibrate on benign windows, then score and judge one window."""
    detector = ReconstructionDetector(forecaster)
    detector.calibrate(benign_validation)
    return detector.detect(window)
