"""
Parameter containers and the basic layers shared by both architectures.
"""

import math
from collections import OrderedDict
from typing import Optional

import numpy as np

from adsb_sentinel.numerics import Tensor, ops


class Module:
    """A named tree of parameters and sub-modules with a train/eval switch."""

    def __init__(self):
        self._params: "OrderedDict[str, Tensor]" = OrderedDict()
        self._children: "OrderedDict[str, Module]" = OrderedDict()
        self.training = True

    def add_parameter(self, name: str, values: np.ndarray) -> Tensor:
        param = Tensor(values, requires_grad=True, name=name)
        self._params[name] = param
        return param

    def add_module(self, name: str, module: "Module") -> "Module":
        self._children[name] = module
        return module

    def parameters(self, prefix: str = "") -> "OrderedDict[str, Tensor]":
        """All parameters keyed by dotted path, in construction order."""
        found: "OrderedDict[str, Tensor]" = OrderedDict()
        for name, param in self._params.items():
            found[f"{prefix}{name}"] = param
        for name, child in self._children.items():
            found.update(child.parameters(prefix=f"{prefix}{name}."))
        return found

    def parameter_count(self) -> int:
        return sum(p.size for p in self.parameters().values())

    def train(self) -> "Module":
        self.training = True
        for child in self._children.values():
            child.train()
        return self

    def eval(self) -> "Module":
        self.training = False
        for child in self._children.values():
            child.eval()
        return self


def uniform_init(rng: np.random.Generator, fan_in: int, shape: tuple[int, ...]) -> np.ndarray:
    """Weights uniform in +-1/sqrt(fan_in)."""
    bound = 1.0 / math.sqrt(fan_in)
    return rng.uniform(-bound, bound, size=shape)


class Linear(Module):
    """y = x W + b over the last axis."""

    def __init__(
        self,
        in_features: int,
        out_features: int,
        rng: np.random.Generator,
        bias: bool = True,
    ):
        super().__init__()
        self.in_features = in_features
        self.out_features = out_features
        self.weight = self.add_parameter(
            "weight", uniform_init(rng, in_features, (in_features, out_features))
        )
        self.bias: Optional[Tensor] = (
            self.add_parameter("bias", np.zeros(out_features)) if bias else None
        )

    def __call__(self, x: Tensor) -> Tensor:
        out = ops.matmul(x, self.weight)
        return ops.add(out, self.bias) if self.bias is not None else out

    def zero_(self) -> None:
        self.weight.data[...] = 0.0
        if self.bias is not None:
            self.bias.data[...] = 0.0


class LayerNorm(Module):
    """Layer normalisation with unit gain and zero bias at init."""

    def __init__(self, dim: int, eps: float = 1e-5):
        super().__init__()
        self.eps = eps
        self.gain = self.add_parameter("gain", np.ones(dim))
        self.bias = self.add_parameter("bias", np.zeros(dim))

    def __call__(self, x: Tensor) -> Tensor:
        return ops.layer_norm(x, self.gain, self.bias, eps=self.eps)
