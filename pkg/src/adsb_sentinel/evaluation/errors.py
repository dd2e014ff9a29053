"""
Error classes for evaluation.
"""

from adsb_sentinel.errors import SentinelError


class EvaluationError(SentinelError):
    """Base class for evaluation errors."""

    pass


class NotCalibratedError(EvaluationError):
    """A threshold detector was used before calibration."""

    pass


class MissingCheckpointError(EvaluationError):
    """An ensemble member's checkpoint file is absent."""

    def __init__(self, classifier: str, path: str):
        self.classifier = classifier
        self.path = path
        super().__init__(f"missing {classifier} classifier checkpoint: {path}")


class EnsembleMismatchError(EvaluationError):
    """Ensemble members disagree on architecture, normalisation or window length."""

    pass


class WindowLengthError(EvaluationError):
    """A window does not have the length the models were fine-tuned on."""

    pass
