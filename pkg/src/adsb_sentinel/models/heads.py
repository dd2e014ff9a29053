"""
Sequence models with a forecasting or intrusion-detection head.

Both heads read the representation of the final time step. The forecast head
maps it to the next normalised 6-feature row; the detection head maps it to a
probability through a sigmoid.
"""

from collections import OrderedDict
from collections.abc import Mapping
from typing import Optional

import numpy as np

from adsb_sentinel.errors import ConfigurationError, UsageError
from adsb_sentinel.models.config import ModelConfig
from adsb_sentinel.models.layers import Linear, Module
from adsb_sentinel.models.registry import get_architecture_registry
from adsb_sentinel.numerics import ShapeMismatchError, Tensor, ops

HEAD_TYPES = ("forecast", "detect")


class ModelWithHead(Module):
    """Input projection, sequence core and one output head.

    Args:
        config: Architecture configuration; ``config.seed`` fixes initialisation
        head: ``"forecast"`` or ``"detect"``
    """

    def __init__(self, config: ModelConfig, head: str = "forecast"):
        super().__init__()
        if head not in HEAD_TYPES:
            raise ConfigurationError(f"head must be one of {HEAD_TYPES}, got {head!r}")
        self.config = config
        self.head_type = head
        rng = np.random.default_rng(config.seed)
        self._dropout_rng = np.random.default_rng([config.seed, 1])
        self.input_projection = self.add_module(
            "input_projection", Linear(config.input_dim, config.embedding_dim, rng)
        )
        self.core = self.add_module(
            "core", get_architecture_registry().build(config, rng, self._dropout_rng)
        )
        self.head = self.add_module("head", self._new_head(head, rng))

    def _new_head(self, head: str, rng: np.random.Generator) -> Linear:
        out = self.config.input_dim if head == "forecast" else 1
        return Linear(self.config.embedding_dim, out, rng)

    def replace_head(self, head: str) -> None:
        """Swap in a freshly initialised head, keeping projection and core weights."""
        if head not in HEAD_TYPES:
            raise ConfigurationError(f"head must be one of {HEAD_TYPES}, got {head!r}")
        self.head_type = head
        self.head = self.add_module(
            "head", self._new_head(head, np.random.default_rng([self.config.seed, 2]))
        )

    # Forward passes

    def _as_batch(self, windows) -> Tensor:
        x = windows if isinstance(windows, Tensor) else Tensor(windows)
        if x.ndim == 2:
            x = ops.reshape(x, (1,) + x.shape)
        if x.ndim != 3 or x.shape[-1] != self.config.input_dim or x.shape[1] < 1:
            raise ShapeMismatchError(
                f"expected windows of shape (B, L>=1, {self.config.input_dim}), got {x.shape}"
            )
        return x

    def encode(self, windows) -> Tensor:
        """Core representation for every time step, shape (B, L, embedding_dim)."""
        return self.core(self.input_projection(self._as_batch(windows)))

    def forward(self, windows) -> Tensor:
        """Head output from the final time step.

        Returns (B, 6) forecasts or (B,) detection probabilities.
        """
        encoded = self.encode(windows)
        last = ops.index(encoded, (slice(None), -1, slice(None)))
        out = self.head(last)
        if self.head_type == "detect":
            return ops.reshape(ops.sigmoid(out), (out.shape[0],))
        return out

    __call__ = forward

    def _require(self, head: str) -> None:
        if self.head_type != head:
            raise UsageError(f"model has a {self.head_type} head; {head} is not available")

    def forecast(self, window) -> np.ndarray:
        """Predicted next normalised row for one (L, 6) window."""
        self._require("forecast")
        return self.forward(window).data[0].copy()

    def forecast_sequence(self, window) -> np.ndarray:
        """One-step-ahead prediction after every prefix of one window, shape (L, 6).

        Row t predicts window row t + 1; causality makes this equal to calling
        ``forecast`` on each prefix.
        """
        self._require("forecast")
        encoded = self.encode(window)
        return self.head(encoded).data[0].copy()

    def detect(self, window) -> float:
        self._require("detect")
        return float(self.forward(window).data[0])

    def detect_batch(self, windows) -> np.ndarray:
        self._require("detect")
        return self.forward(windows).data.copy()

    # Parameter state

    def state_dict(self) -> "OrderedDict[str, np.ndarray]":
        return OrderedDict((name, p.data.copy()) for name, p in self.parameters().items())

    def load_state(
        self, values: Mapping[str, np.ndarray], skip_prefix: Optional[str] = None
    ) -> list[str]:
        """Copy named arrays into matching parameters.

        Returns the names that were loaded. Parameters under ``skip_prefix`` are
        left untouched.
        """
        loaded = []
        for name, param in self.parameters().items():
            if skip_prefix and name.startswith(skip_prefix):
                continue
            if name not in values:
                continue
            array = np.asarray(values[name], dtype=np.float64)
            if array.shape != param.shape:
                raise ShapeMismatchError(
                    f"parameter {name}: expected shape {param.shape}, got {array.shape}"
                )
            param.data[...] = array
            loaded.append(name)
        return loaded
