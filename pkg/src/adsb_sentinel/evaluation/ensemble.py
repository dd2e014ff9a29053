"""
One-vs-rest ensemble IDS.

Four binary detectors (ALT, GS, HDG, GN) score every window; the class with
the highest probability wins. Exact ties go to the earliest class in
ALT < GS < HDG < GN order.
"""

from collections import OrderedDict
from collections.abc import Mapping
from pathlib import Path
from typing import Union

import numpy as np

from adsb_sentinel.attacks.spec import CLASSES
from adsb_sentinel.data.normalize import NormalizationStats, apply_normalizer
from adsb_sentinel.evaluation.errors import (
    EnsembleMismatchError,
    MissingCheckpointError,
    WindowLengthError,
)
from adsb_sentinel.models.heads import ModelWithHead
from adsb_sentinel.telemetry import LoggingFacade
from adsb_sentinel.training.checkpoint import (
    Checkpoint,
    build_model_from_checkpoint,
    load_checkpoint,
)

logger = LoggingFacade("adsb_sentinel.evaluation.ensemble")

DEFAULT_WINDOW_LENGTH = 50


def argmax_class(probabilities: Mapping[str, float]) -> str:
    """Highest-probability class; ties resolved by ``CLASSES`` order."""
    best = CLASSES[0]
    for name in CLASSES[1:]:
        if probabilities[name] > probabilities[best]:
            best = name
    return best


class EnsembleIDS:
    """Four detection models sharing architecture family, statistics and window length.

    Args:
        models: Detection models keyed by classifier name (ALT, GS, HDG, GN)
        stats: Normalisation shared by every member
        length: Window length the members were fine-tuned on
    """

    def __init__(
        self,
        models: Mapping[str, ModelWithHead],
        stats: NormalizationStats,
        length: int = DEFAULT_WINDOW_LENGTH,
    ):
        missing = [name for name in CLASSES if name not in models]
        if missing:
            raise EnsembleMismatchError(f"ensemble lacks classifier {missing[0]}")
        architectures = {models[name].config.architecture for name in CLASSES}
        if len(architectures) != 1:
            raise EnsembleMismatchError(f"ensemble mixes architectures {sorted(architectures)}")
        for name in CLASSES:
            if models[name].head_type != "detect":
                raise EnsembleMismatchError(f"{name} model has a {models[name].head_type} head")
        self.models: "OrderedDict[str, ModelWithHead]" = OrderedDict(
            (name, models[name].eval()) for name in CLASSES
        )
        self.stats = stats
        self.length = length
        self.architecture = architectures.pop()

    @classmethod
    def from_checkpoints(cls, checkpoints: Mapping[str, Checkpoint]) -> "EnsembleIDS":
        """Build an ensemble, checking that members share statistics and length."""
        first = checkpoints[CLASSES[0]]
        lengths = set()
        for name in CLASSES:
            ckpt = checkpoints[name]
            if ckpt.normalization != first.normalization:
                raise EnsembleMismatchError(
                    f"{name} checkpoint uses different normalization statistics"
                )
            recorded = ckpt.provenance.get("classifier")
            if recorded is not None and recorded != name:
                raise EnsembleMismatchError(
                    f"checkpoint given for {name} was trained as {recorded}"
                )
            lengths.add(ckpt.provenance.get("sequence_length", DEFAULT_WINDOW_LENGTH))
        if len(lengths) != 1:
            raise EnsembleMismatchError(f"ensemble members use window lengths {sorted(lengths)}")
        models = {name: build_model_from_checkpoint(checkpoints[name]) for name in CLASSES}
        return cls(models, first.normalization, lengths.pop())

    def normalize(self, windows: np.ndarray) -> np.ndarray:
        return apply_normalizer(self.stats, windows)

    def _check(self, windows: np.ndarray) -> np.ndarray:
        windows = np.asarray(windows, dtype=np.float64)
        if windows.ndim == 2:
            windows = windows[None]
        if windows.ndim != 3 or windows.shape[1] != self.length:
            raise WindowLengthError(
                f"ensemble expects windows of length {self.length}, got shape {windows.shape}"
            )
        return windows

    def probabilities(self, windows: np.ndarray) -> np.ndarray:
        """Per-class probabilities for normalised windows, shape (B, 4)."""
        windows = self._check(windows)
        return np.stack([model.detect_batch(windows) for model in self.models.values()], axis=1)

    def classify_batch(self, windows: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Class ids and probabilities for a batch of normalised windows."""
        probs = self.probabilities(windows)
        # np.argmax returns the first maximum, matching the class order tie rule.
        return np.argmax(probs, axis=1), probs


def classify(ids: EnsembleIDS, window: np.ndarray) -> tuple[int, dict[str, float]]:
    """Classify one normalised (L, 6) window.

    Returns:
        The winning class id and the probability of every class
    """
    probs = ids.probabilities(window)[0]
    named = {name: float(p) for name, p in zip(CLASSES, probs)}
    return CLASSES.index(argmax_class(named)), named


def load_ensemble(ckpt_dir: Union[str, Path]) -> EnsembleIDS:
    """Load ``alt.json``, ``gs.json``, ``hdg.json`` and ``gn.json`` from a directory.

    Raises:
        MissingCheckpointError: Naming the first classifier without a file
    """
    ckpt_dir = Path(ckpt_dir)
    paths = {name: ckpt_dir / f"{name.lower()}.json" for name in CLASSES}
    for name, path in paths.items():
        if not path.is_file():
            raise MissingCheckpointError(name, str(path))
    ids = EnsembleIDS.from_checkpoints({name: load_checkpoint(p) for name, p in paths.items()})
    logger.info("ensemble.loaded", path=str(ckpt_dir), architecture=ids.architecture)
    return ids
