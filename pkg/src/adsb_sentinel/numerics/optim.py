"""
Adam optimizer.
"""

from collections.abc import Mapping
from dataclasses import dataclass, field

import numpy as np

from adsb_sentinel.numerics.errors import MissingGradientError
from adsb_sentinel.numerics.tensor import Tensor


@dataclass
class AdamState:
    """Moment accumulators and hyperparameters for one optimisation run."""

    learning_rate: float
    beta1: float = 0.9
    beta2: float = 0.999
    epsilon: float = 1e-8
    step: int = 0
    first_moment: dict[str, np.ndarray] = field(default_factory=dict)
    second_moment: dict[str, np.ndarray] = field(default_factory=dict)


def adam_step(params: Mapping[str, Tensor], state: AdamState) -> None:
    """Apply one bias-corrected Adam update in place and clear the gradients.

    Raises:
        MissingGradientError: If a trainable parameter has no gradient
    """
    for name, param in params.items():
        if param.requires_grad and param.grad is None:
            raise MissingGradientError(f"parameter {name} has no gradient")

    state.step += 1
    t = state.step
    correction1 = 1.0 - state.beta1**t
    correction2 = 1.0 - state.beta2**t

    for name, param in params.items():
        if not param.requires_grad:
            continue
        grad = param.grad
        m = state.first_moment.get(name)
        v = state.second_moment.get(name)
        if m is None:
            m = np.zeros_like(param.data)
            v = np.zeros_like(param.data)
        m = state.beta1 * m + (1.0 - state.beta1) * grad
        v = state.beta2 * v + (1.0 - state.beta2) * grad * grad
        state.first_moment[name] = m
        state.second_moment[name] = v

        m_hat = m / correction1
        v_hat = v / correction2
        param.data -= state.learning_rate * m_hat / (np.sqrt(v_hat) + state.epsilon)
        param.grad = None


class Adam:
    """Adam over a fixed, named parameter set."""

    def __init__(
        self,
        params: Mapping[str, Tensor],
        learning_rate: float,
        beta1: float = 0.9,
        beta2: float = 0.999,
        epsilon: float = 1e-8,
    ):
        self.params = dict(params)
        self.state = AdamState(
            learning_rate=learning_rate, beta1=beta1, beta2=beta2, epsilon=epsilon
        )

    def step(self) -> None:
        adam_step(self.params, self.state)

    def zero_grad(self) -> None:
        for param in self.params.values():
            param.zero_grad()
