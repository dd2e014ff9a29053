"""
Training losses: mean squared error for forecasting, binary cross-entropy for
detection.
"""

from typing import Any

import numpy as np

from adsb_sentinel.numerics.errors import ShapeMismatchError, ValidationError
from adsb_sentinel.numerics.ops import _emit
from adsb_sentinel.numerics.tensor import Tensor, as_tensor

PROB_CLAMP = 1e-7


def _check_shapes(kind: str, prediction: Tensor, target: Tensor) -> None:
    if prediction.shape != target.shape:
        raise ShapeMismatchError(
            f"{kind}: prediction shape {prediction.shape} != target shape {target.shape}"
        )


def mse(prediction: Any, target: Any) -> Tensor:
    """Mean of squared differences."""
    prediction, target = as_tensor(prediction), as_tensor(target)
    _check_shapes("mse", prediction, target)
    diff = prediction.data - target.data
    n = diff.size

    def backward(g):
        return g * 2.0 * diff / n, g * -2.0 * diff / n

    return _emit("mse", (prediction, target), np.array(np.mean(diff * diff)), backward)


def bce(prediction: Any, target: Any) -> Tensor:
    """Binary cross-entropy with probabilities clamped to [1e-7, 1 - 1e-7]."""
    prediction, target = as_tensor(prediction), as_tensor(target)
    _check_shapes("bce", prediction, target)
    y = target.data
    if not np.all((y == 0.0) | (y == 1.0)):
        raise ValidationError("bce targets must be 0 or 1")
    p = np.clip(prediction.data, PROB_CLAMP, 1.0 - PROB_CLAMP)
    inside = (prediction.data >= PROB_CLAMP) & (prediction.data <= 1.0 - PROB_CLAMP)
    n = p.size
    value = -np.mean(y * np.log(p) + (1.0 - y) * np.log(1.0 - p))

    def backward(g):
        dp = g * (-(y / p) + (1.0 - y) / (1.0 - p)) / n
        return dp * inside, None

    return _emit("bce", (prediction, target), np.array(value), backward)


def losses(kind: str, prediction: Any, target: Any) -> Tensor:
    """Dispatch by loss name ("mse" or "bce")."""
    if kind == "mse":
        return mse(prediction, target)
    if kind == "bce":
        return bce(prediction, target)
    raise ValidationError(f"unknown loss kind: {kind}")
