"""
Two-stage training: forecasting pre-training on benign windows, then binary
detection fine-tuning that starts from the pre-trained weights.

Every epoch shuffles the windows with the run's generator and keeps the last
partial batch. All weights stay trainable during fine-tuning and the optimizer
state starts fresh.
"""

import dataclasses
from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from adsb_sentinel.data.normalize import NormalizationStats, fit_normalizer
from adsb_sentinel.data.records import FlightSequence
from adsb_sentinel.data.windows import (
    FeatureWindow,
    build_forecast_windows,
    normalize_windows,
    stack_windows,
)
from adsb_sentinel.errors import ConfigurationError
from adsb_sentinel.models.config import ModelConfig
from adsb_sentinel.models.heads import ModelWithHead
from adsb_sentinel.numerics import Adam, NumericsError, Tape, Tensor, losses
from adsb_sentinel.telemetry import get_telemetry
from adsb_sentinel.training.checkpoint import Checkpoint
from adsb_sentinel.training.config import TrainConfig
from adsb_sentinel.training.errors import (
    ArchitectureMismatchError,
    EmptyDatasetError,
    HeadMismatchError,
    MissingParameterError,
    TrainingDivergedError,
)

tracer, logger = get_telemetry("adsb_sentinel.training")


@dataclass
class TrainingHistory:
    train_loss: list[float] = field(default_factory=list)
    validation_loss: list[float] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"train_loss": self.train_loss, "validation_loss": self.validation_loss}


def _arrays(windows: Sequence[FeatureWindow], loss: str) -> tuple[np.ndarray, np.ndarray]:
    inputs = stack_windows(windows)
    if loss == "mse":
        if any(w.target is None for w in windows):
            raise EmptyDatasetError("forecasting windows must carry a next-row target")
        targets = np.stack([w.target for w in windows])
    else:
        if any(w.label is None for w in windows):
            raise EmptyDatasetError("detection windows must carry a binary label")
        targets = np.array([float(w.label) for w in windows])
    return inputs, targets


def evaluate_loss(
    model: ModelWithHead, inputs: np.ndarray, targets: np.ndarray, loss: str, batch_size: int
) -> float:
    """Mean loss over all windows without recording a tape."""
    was_training = model.training
    model.eval()
    total = 0.0
    for start in range(0, len(inputs), batch_size):
        chunk = slice(start, start + batch_size)
        value = losses(loss, model.forward(inputs[chunk]), Tensor(targets[chunk])).item()
        total += value * len(inputs[chunk])
    if was_training:
        model.train()
    return total / len(inputs)


def fit(
    model: ModelWithHead,
    config: TrainConfig,
    windows: Sequence[FeatureWindow],
    loss: str,
    validation: Optional[Sequence[FeatureWindow]] = None,
) -> TrainingHistory:
    """Train ``model`` in place with Adam on normalised windows.

    Raises:
        EmptyDatasetError: If there are no windows
        TrainingDivergedError: If the loss or a gradient becomes non-finite
    """
    if not windows:
        raise EmptyDatasetError(f"{config.stage}: no training windows")
    inputs, targets = _arrays(windows, loss)
    if inputs.shape[1] != config.sequence_length:
        raise ConfigurationError(
            f"sequence_length: config says {config.sequence_length}, "
            f"windows have length {inputs.shape[1]}"
        )
    val = _arrays(validation, loss) if validation else None
    rng = np.random.default_rng([config.seed, 7])
    optimizer = Adam(model.parameters(), config.learning_rate)
    history = TrainingHistory()
    n = len(inputs)

    model.train()
    for epoch in range(config.epochs):
        with tracer.start_as_current_span(
            f"{config.stage}.epoch", {"epoch": epoch, "architecture": config.architecture}
        ):
            order = rng.permutation(n)
            total = 0.0
            for batch, start in enumerate(range(0, n, config.batch_size)):
                idx = order[start : start + config.batch_size]
                try:
                    with Tape() as tape:
                        value = losses(loss, model.forward(inputs[idx]), Tensor(targets[idx]))
                        tape.backward(value)
                    optimizer.step()
                except NumericsError as e:
                    logger.error(
                        f"{config.stage}.diverged",
                        epoch=epoch,
                        batch=batch,
                        error=str(e),
                        error_type=type(e).__name__,
                    )
                    raise TrainingDivergedError(str(e), epoch, batch) from e
                total += value.item() * len(idx)
            epoch_loss = total / n
            history.train_loss.append(epoch_loss)
            fields = {"epoch": epoch + 1, "loss": epoch_loss}
            if val is not None:
                val_loss = evaluate_loss(model, val[0], val[1], loss, config.batch_size)
                history.validation_loss.append(val_loss)
                fields["validation_loss"] = val_loss
            logger.info(f"{config.stage}.epoch", **fields)
    model.eval()
    return history


def prepare_pretrain_windows(
    flights: Sequence[FlightSequence], length: int, stride: int = 1
) -> tuple[NormalizationStats, list[FeatureWindow]]:
    """Fit normalisation on benign flights and cut forecasting windows from them."""
    stats = fit_normalizer(flights)
    return stats, build_forecast_windows(flights, stats, length, stride)


def pretrain(
    config: TrainConfig,
    windows: Sequence[FeatureWindow],
    stats: NormalizationStats,
    validation: Optional[Sequence[FeatureWindow]] = None,
) -> Checkpoint:
    """Train a forecast-headed model on normalised benign forecasting windows."""
    if config.stage != "pretrain":
        raise ConfigurationError(f"stage: pretrain needs a pretrain config, got {config.stage!r}")
    model = ModelWithHead(config.model_config(), head="forecast")
    with tracer.start_as_current_span("pretrain", {"architecture": config.architecture}):
        logger.info(
            "pretrain.start",
            architecture=config.architecture,
            windows=len(windows),
            parameters=model.parameter_count(),
        )
        history = fit(model, config, windows, "mse", validation)
    return Checkpoint.from_model(
        model,
        stats,
        provenance=_provenance(config, history, len(windows), init="random"),
        training=config.to_dict(),
    )


def train_detector(
    config: TrainConfig,
    model: ModelWithHead,
    stats: NormalizationStats,
    windows: Sequence[FeatureWindow],
    validation: Optional[Sequence[FeatureWindow]] = None,
    init: str = "random",
) -> Checkpoint:
    """Train a detection-headed model on raw-unit labelled windows.

    Windows are normalised with ``stats`` before training.
    """
    if model.head_type != "detect":
        raise HeadMismatchError(f"detector training needs a detect head, got {model.head_type}")
    train_windows = normalize_windows(windows, stats)
    val_windows = normalize_windows(validation, stats) if validation else None
    with tracer.start_as_current_span(
        "finetune", {"architecture": config.architecture, "classifier": config.classifier}
    ):
        logger.info(
            "finetune.start",
            architecture=config.architecture,
            classifier=config.classifier,
            windows=len(train_windows),
            init=init,
        )
        history = fit(model, config, train_windows, "bce", val_windows)
    return Checkpoint.from_model(
        model,
        stats,
        provenance=_provenance(config, history, len(train_windows), init=init),
        training=config.to_dict(),
    )


def _detector_model_config(config: TrainConfig, pretrained: Checkpoint) -> ModelConfig:
    model_config = dataclasses.replace(pretrained.model_config, seed=config.seed)
    if config.dropout is not None:
        model_config = dataclasses.replace(model_config, dropout=config.dropout)
    return model_config


def detector_from_pretrained(config: TrainConfig, pretrained: Checkpoint) -> ModelWithHead:
    """Detection model whose projection and core weights come from ``pretrained``.

    The detection head is freshly initialised.

    Raises:
        ArchitectureMismatchError: If the config names another architecture
        HeadMismatchError: If ``pretrained`` is not a forecasting checkpoint
    """
    if config.architecture != pretrained.architecture:
        raise ArchitectureMismatchError(
            f"config architecture {config.architecture!r} does not match "
            f"checkpoint architecture {pretrained.architecture!r}"
        )
    if pretrained.head != "forecast":
        raise HeadMismatchError(
            f"fine-tuning starts from a forecast checkpoint, got {pretrained.head}"
        )
    model = ModelWithHead(_detector_model_config(config, pretrained), head="detect")
    loaded = set(model.load_state(pretrained.params, skip_prefix="head."))
    missing = [n for n in model.parameters() if not n.startswith("head.") and n not in loaded]
    if missing:
        raise MissingParameterError(f"pretrained checkpoint is missing parameter {missing[0]}")
    return model


def finetune(
    config: TrainConfig,
    pretrained: Checkpoint,
    windows: Sequence[FeatureWindow],
    validation: Optional[Sequence[FeatureWindow]] = None,
) -> Checkpoint:
    """Fine-tune a binary detector from a pre-trained forecasting checkpoint.

    ``windows`` are raw-unit labelled windows (one Dataset B subset); they are
    normalised with the pre-trained statistics.
    """
    if config.stage != "finetune":
        raise ConfigurationError(f"stage: finetune needs a finetune config, got {config.stage!r}")
    model = detector_from_pretrained(config, pretrained)
    return train_detector(
        config, model, pretrained.normalization, windows, validation, init="pretrained"
    )


@dataclass(frozen=True)
class InitComparison:
    """First-epoch validation loss of one seed's paired fine-tuning runs."""

    seed: int
    pretrained_loss: float
    random_loss: float

    @property
    def pretrained_wins(self) -> bool:
        return self.pretrained_loss < self.random_loss


def compare_initializations(
    config: TrainConfig,
    pretrained: Checkpoint,
    windows: Sequence[FeatureWindow],
    validation: Sequence[FeatureWindow],
    seeds: Sequence[int],
) -> list[InitComparison]:
    """Fine-tune from ``pretrained`` and from random weights once per seed.

    The two runs of a seed share the head initialisation and the batch order,
    so they differ only in where the projection and core weights start.

    Raises:
        EmptyDatasetError: If there are no validation windows
    """
    if config.stage != "finetune":
        raise ConfigurationError(f"stage: finetune needs a finetune config, got {config.stage!r}")
    if not validation:
        raise EmptyDatasetError("comparing initialisations needs validation windows")
    results = []
    for seed in seeds:
        seeded = dataclasses.replace(config, seed=seed)
        warm = detector_from_pretrained(seeded, pretrained)
        cold = ModelWithHead(_detector_model_config(seeded, pretrained), head="detect")
        losses_by_init = {}
        for init, model in (("pretrained", warm), ("random", cold)):
            checkpoint = train_detector(
                seeded, model, pretrained.normalization, windows, validation, init=init
            )
            losses_by_init[init] = checkpoint.provenance["validation_loss"][0]
        result = InitComparison(seed, losses_by_init["pretrained"], losses_by_init["random"])
        logger.info(
            "finetune.init_comparison",
            seed=seed,
            pretrained_loss=result.pretrained_loss,
            random_loss=result.random_loss,
        )
        results.append(result)
    return results


def _provenance(config: TrainConfig, history: TrainingHistory, windows: int, init: str) -> dict:
    return {
        "stage": config.stage,
        "classifier": config.classifier,
        "seed": config.seed,
        "epochs_completed": len(history.train_loss),
        "epochs": config.epochs,
        "batch_size": config.batch_size,
        "sequence_length": config.sequence_length,
        "learning_rate": config.learning_rate,
        "dropout": config.dropout,
        "windows": windows,
        "init": init,
        "final_loss": history.train_loss[-1] if history.train_loss else None,
        **history.to_dict(),
    }
