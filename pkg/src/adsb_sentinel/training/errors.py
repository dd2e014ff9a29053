"""
Error classes for training and checkpoints.
"""

from adsb_sentinel.errors import SentinelError


class TrainingError(SentinelError):
    """Base class for training errors."""

    pass


class EmptyDatasetError(TrainingError):
    """A training run received no windows."""

    pass


class TrainingDivergedError(TrainingError):
    """The loss or a gradient stopped being finite."""

    def __init__(self, message: str, epoch: int, batch: int):
        """
        Initialize a new divergence error.

        Args:
            message: Diagnostic description
            epoch: Zero-based epoch in which training diverged
            batch: Zero-based batch index within that epoch
        """
        self.epoch = epoch
        self.batch = batch
        super().__init__(f"{message} (epoch {epoch}, batch {batch})")


class ArchitectureMismatchError(TrainingError):
    """A configuration names a different architecture than its checkpoint."""

    pass


class HeadMismatchError(TrainingError):
    """A checkpoint carries the wrong head for the requested stage."""

    pass


class CheckpointError(SentinelError):
    """Base class for checkpoint persistence errors."""

    pass


class CheckpointFormatError(CheckpointError):
    """The checkpoint file is not a well-formed checkpoint document."""

    pass


class CheckpointVersionError(CheckpointError):
    """The checkpoint was written by an unsupported format version."""

    pass


class MissingParameterError(CheckpointError):
    """A parameter required by the declared architecture is absent."""

    pass


class ParameterShapeError(CheckpointError):
    """A stored parameter does not have the shape the architecture expects."""

    pass


class MissingNormalizationError(CheckpointError):
    """The checkpoint lacks the normalisation statistics it was trained with."""

    pass
