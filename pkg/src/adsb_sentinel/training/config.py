"""
Training configuration with the reference hyperparameter defaults.

Pre-training shares batch size 32, sequence length 10 and 20 epochs across
architectures; fine-tuning uses sequence length 50 everywhere.
"""

import math
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Any, Optional, Union

import yaml

from adsb_sentinel.config import merge_configs
from adsb_sentinel.errors import ConfigurationError
from adsb_sentinel.models.config import DEFAULT_DROPOUT, ModelConfig, canonical_architecture

STAGES = ("pretrain", "finetune")
CLASSIFIERS = ("ALT", "GS", "HDG", "GN")

PRETRAIN_EPOCHS = 20
PRETRAIN_BATCH_SIZE = 32
PRETRAIN_SEQUENCE_LENGTH = 10
FINETUNE_SEQUENCE_LENGTH = 50

PRETRAIN_LEARNING_RATE = {"xlstm": 8.4e-4, "transformer": 1.3e-4}

# (epochs, batch size, learning rate, dropout) per classifier.
FINETUNE_DEFAULTS = {
    "xlstm": {
        "ALT": (5, 50, 6e-5, None),
        "GS": (10, 40, 2e-4, None),
        "HDG": (10, 50, 5e-5, None),
        "GN": (15, 30, 1e-4, None),
    },
    "transformer": {
        "ALT": (15, 50, 8.5e-5, 0.14),
        "GS": (10, 40, 1.5e-5, 0.056),
        "HDG": (10, 40, 4e-4, 0.028),
        "GN": (15, 30, 1e-4, 0.24),
    },
}


@dataclass
class TrainConfig:
    """One training run.

    ``model`` holds architecture overrides (e.g. ``{"embedding_dim": 8}``) applied
    on top of the default architecture.
    """

    stage: str
    architecture: str
    classifier: Optional[str] = None
    epochs: int = PRETRAIN_EPOCHS
    batch_size: int = PRETRAIN_BATCH_SIZE
    sequence_length: int = PRETRAIN_SEQUENCE_LENGTH
    learning_rate: float = 8.4e-4
    dropout: Optional[float] = None
    seed: int = 0
    model: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        self.architecture = canonical_architecture(self.architecture)
        if self.classifier is not None:
            self.classifier = self.classifier.upper()
        self.validate()

    def validate(self) -> None:
        """Raise ConfigurationError naming the first invalid key."""
        if self.stage not in STAGES:
            raise ConfigurationError(f"stage: must be one of {STAGES}, got {self.stage!r}")
        if self.architecture not in PRETRAIN_LEARNING_RATE:
            raise ConfigurationError(
                f"architecture: must be one of {sorted(PRETRAIN_LEARNING_RATE)}, "
                f"got {self.architecture!r}"
            )
        if self.stage == "finetune" and self.classifier not in CLASSIFIERS:
            raise ConfigurationError(
                f"classifier: must be one of {CLASSIFIERS} for fine-tuning, "
                f"got {self.classifier!r}"
            )
        for key in ("epochs", "batch_size", "seed"):
            value = getattr(self, key)
            if not isinstance(value, int) or isinstance(value, bool):
                raise ConfigurationError(f"{key}: must be an integer, got {value!r}")
        if self.epochs < 1 or self.batch_size < 1:
            raise ConfigurationError("epochs and batch_size must be at least 1")
        if not isinstance(self.sequence_length, int) or self.sequence_length < 2:
            raise ConfigurationError(
                f"sequence_length: must be an integer >= 2, got {self.sequence_length!r}"
            )
        lr = self.learning_rate
        if not isinstance(lr, (int, float)) or not math.isfinite(lr) or lr <= 0:
            raise ConfigurationError(f"learning_rate: must be positive, got {lr!r}")
        if self.dropout is not None and not 0.0 <= self.dropout < 1.0:
            raise ConfigurationError(f"dropout: must lie in [0, 1), got {self.dropout!r}")
        if not isinstance(self.model, dict):
            raise ConfigurationError(f"model: must be a mapping, got {self.model!r}")

    @classmethod
    def defaults(
        cls,
        stage: str,
        architecture: str,
        classifier: Optional[str] = None,
        seed: int = 0,
    ) -> "TrainConfig":
        """Reference defaults for a stage/architecture/classifier combination."""
        arch = canonical_architecture(architecture)
        if arch not in PRETRAIN_LEARNING_RATE:
            raise ConfigurationError(f"architecture: unknown architecture {architecture!r}")
        if stage == "pretrain":
            return cls(
                stage=stage,
                architecture=arch,
                learning_rate=PRETRAIN_LEARNING_RATE[arch],
                dropout=DEFAULT_DROPOUT[arch] or None,
                seed=seed,
            )
        if stage != "finetune":
            raise ConfigurationError(f"stage: must be one of {STAGES}, got {stage!r}")
        key = (classifier or "").upper()
        if key not in CLASSIFIERS:
            raise ConfigurationError(
                f"classifier: must be one of {CLASSIFIERS}, got {classifier!r}"
            )
        epochs, batch_size, lr, dropout = FINETUNE_DEFAULTS[arch][key]
        return cls(
            stage=stage,
            architecture=arch,
            classifier=key,
            epochs=epochs,
            batch_size=batch_size,
            sequence_length=FINETUNE_SEQUENCE_LENGTH,
            learning_rate=lr,
            dropout=dropout,
            seed=seed,
        )

    def model_config(self) -> ModelConfig:
        overrides = dict(self.model)
        if self.dropout is not None:
            overrides["dropout"] = self.dropout
        try:
            return ModelConfig.defaults(self.architecture, seed=self.seed, **overrides)
        except TypeError as e:
            raise ConfigurationError(f"model: {e}") from e

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "TrainConfig":
        known = {f.name for f in fields(cls)}
        for key in data:
            if key not in known:
                raise ConfigurationError(f"{key}: unknown training config key")
        try:
            return cls(**data)
        except TypeError as e:
            raise ConfigurationError(f"invalid training config: {e}") from e


def load_train_config(
    path: Optional[Union[str, Path]],
    stage: str,
    architecture: str,
    classifier: Optional[str] = None,
    seed: Optional[int] = None,
) -> TrainConfig:
    """Defaults for the run, overridden by a YAML/JSON file and then by ``seed``.

    Raises:
        FileNotFoundError: If ``path`` is given but does not exist
        ConfigurationError: If the file is malformed or names an invalid value
    """
    base = TrainConfig.defaults(stage, architecture, classifier).to_dict()
    override: dict[str, Any] = {}
    if path is not None:
        path = Path(path)
        if not path.is_file():
            raise FileNotFoundError(f"no such config file: {path}")
        try:
            loaded = yaml.safe_load(path.read_text(encoding="utf-8"))
        except yaml.YAMLError as e:
            raise ConfigurationError(f"{path}: cannot parse config: {e}") from e
        if loaded is not None and not isinstance(loaded, dict):
            raise ConfigurationError(f"{path}: config must be a mapping")
        override = loaded or {}
    merged = merge_configs(base, override)
    for key in ("stage", "architecture"):
        if canonical_architecture(str(merged[key])) != canonical_architecture(str(base[key])):
            raise ConfigurationError(
                f"{key}: config file says {merged[key]!r}, command says {base[key]!r}"
            )
    if seed is not None:
        merged["seed"] = seed
    return TrainConfig.from_dict(merged)
