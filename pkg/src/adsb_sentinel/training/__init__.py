"""Pre-training, fine-tuning and checkpoint persistence."""

from adsb_sentinel.training.checkpoint import (
    CHECKPOINT_VERSION,
    Checkpoint,
    build_model_from_checkpoint,
    load_checkpoint,
    save_checkpoint,
)
from adsb_sentinel.training.config import (
    CLASSIFIERS,
    FINETUNE_DEFAULTS,
    PRETRAIN_LEARNING_RATE,
    STAGES,
    TrainConfig,
    load_train_config,
)
from adsb_sentinel.training.errors import (
    ArchitectureMismatchError,
    CheckpointError,
    CheckpointFormatError,
    CheckpointVersionError,
    EmptyDatasetError,
    HeadMismatchError,
    MissingNormalizationError,
    MissingParameterError,
    ParameterShapeError,
    TrainingDivergedError,
    TrainingError,
)
from adsb_sentinel.training.trainer import (
    InitComparison,
    TrainingHistory,
    compare_initializations,
    detector_from_pretrained,
    evaluate_loss,
    finetune,
    fit,
    prepare_pretrain_windows,
    pretrain,
    train_detector,
)

__all__ = [
    "TrainConfig",
    "load_train_config",
    "STAGES",
    "CLASSIFIERS",
    "FINETUNE_DEFAULTS",
    "PRETRAIN_LEARNING_RATE",
    "Checkpoint",
    "CHECKPOINT_VERSION",
    "save_checkpoint",
    "load_checkpoint",
    "build_model_from_checkpoint",
    "TrainingHistory",
    "fit",
    "evaluate_loss",
    "prepare_pretrain_windows",
    "pretrain",
    "finetune",
    "train_detector",
    "detector_from_pretrained",
    "InitComparison",
    "compare_initializations",
    "TrainingError",
    "EmptyDatasetError",
    "TrainingDivergedError",
    "ArchitectureMismatchError",
    "HeadMismatchError",
    "CheckpointError",
    "CheckpointFormatError",
    "CheckpointVersionError",
    "MissingParameterError",
    "ParameterShapeError",
    "MissingNormalizationError",
]
