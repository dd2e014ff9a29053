"""Dense 64-bit tensors with reverse-mode differentiation and Adam."""

from adsb_sentinel.numerics import ops
from adsb_sentinel.numerics.errors import (
    DomainError,
    MissingGradientError,
    NonFiniteError,
    NumericsError,
    OverflowError,
    ShapeMismatchError,
    ValidationError,
)
from adsb_sentinel.numerics.gradcheck import gradient_check
from adsb_sentinel.numerics.losses import bce, losses, mse
from adsb_sentinel.numerics.optim import Adam, AdamState, adam_step
from adsb_sentinel.numerics.tensor import Tape, TapeEntry, Tensor, active_tape, as_tensor

__all__ = [
    "Tensor",
    "Tape",
    "TapeEntry",
    "active_tape",
    "as_tensor",
    "ops",
    "mse",
    "bce",
    "losses",
    "Adam",
    "AdamState",
    "adam_step",
    "gradient_check",
    "NumericsError",
    "ShapeMismatchError",
    "DomainError",
    "OverflowError",
    "NonFiniteError",
    "MissingGradientError",
    "ValidationError",
]
