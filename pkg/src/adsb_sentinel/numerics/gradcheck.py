"""
Finite-difference gradient checking.
"""

from collections.abc import Sequence
from typing import Callable

import numpy as np

from adsb_sentinel.numerics.tensor import Tape, Tensor


def gradient_check(
    fn: Callable[[], Tensor],
    tensors: Sequence[Tensor],
    step: float = 1e-5,
    floor: float = 1e-4,
) -> float:
    """Compare autodiff gradients of a scalar function with central differences.

    Args:
        fn: Builds the scalar output from ``tensors``; called repeatedly
        tensors: Leaf tensors with ``requires_grad=True``
        step: Central-difference step
        floor: Lower bound on the relative-error denominator

    Returns:
        The maximum relative error ``|a - n| / max(|a|, |n|, floor)``
    """
    for tensor in tensors:
        tensor.zero_grad()
    with Tape() as tape:
        out = fn()
    tape.backward(out)
    analytic = [
        t.grad.copy() if t.grad is not None else np.zeros_like(t.data) for t in tensors
    ]

    worst = 0.0
    for tensor, grad in zip(tensors, analytic):
        flat = tensor.data.reshape(-1)
        grad_flat = grad.reshape(-1)
        for i in range(flat.size):
            original = flat[i]
            flat[i] = original + step
            plus = fn().item()
            flat[i] = original - step
            minus = fn().item()
            flat[i] = original
            numeric = (plus - minus) / (2.0 * step)
            denom = max(abs(grad_flat[i]), abs(numeric), floor)
            worst = max(worst, abs(grad_flat[i] - numeric) / denom)
    return worst
