"""
Pre-norm transformer encoder with causal self-attention.
"""

import math
from typing import Optional

import numpy as np

from adsb_sentinel.errors import ConfigurationError
from adsb_sentinel.models.layers import LayerNorm, Linear, Module
from adsb_sentinel.numerics import ShapeMismatchError, Tensor, ops


def sinusoidal_table(length: int, dim: int) -> np.ndarray:
    """Fixed sine/cosine positional encodings, shape (length, dim)."""
    positions = np.arange(length, dtype=np.float64)[:, None]
    rates = np.exp(-math.log(10000.0) * (np.arange(0, dim, 2, dtype=np.float64) / dim))
    table = np.zeros((length, dim))
    table[:, 0::2] = np.sin(positions * rates)
    table[:, 1::2] = np.cos(positions * rates[: dim // 2])
    return table


def causal_mask(length: int) -> np.ndarray:
    return np.tril(np.ones((length, length), dtype=bool))


class SelfAttention(Module):
    """Causal scaled dot-product attention with ``heads`` equal-width heads."""

    def __init__(self, dim: int, heads: int, rng: np.random.Generator):
        super().__init__()
        if heads < 1 or dim % heads:
            raise ConfigurationError(
                f"embedding_dim {dim} must be divisible by heads {heads}"
            )
        self.dim = dim
        self.heads = heads
        self.head_dim = dim // heads
        self.W_q = self.add_module("W_q", Linear(dim, dim, rng))
        self.W_k = self.add_module("W_k", Linear(dim, dim, rng))
        self.W_v = self.add_module("W_v", Linear(dim, dim, rng))
        self.W_o = self.add_module("W_o", Linear(dim, dim, rng))

    def _split(self, x: Tensor) -> Tensor:
        batch, length = x.shape[0], x.shape[1]
        return ops.permute(
            ops.reshape(x, (batch, length, self.heads, self.head_dim)), (0, 2, 1, 3)
        )

    def attend(self, x: Tensor) -> tuple[Tensor, Tensor]:
        """Return the merged head context (before W_o) and the attention weights.

        Weights have shape (B, heads, L, L); every row sums to one.
        """
        batch, length = x.shape[0], x.shape[1]
        q, k, v = self._split(self.W_q(x)), self._split(self.W_k(x)), self._split(self.W_v(x))
        scores = ops.mul(ops.matmul(q, ops.transpose(k)), 1.0 / math.sqrt(self.head_dim))
        weights = ops.softmax_rows(scores, mask=causal_mask(length))
        context = ops.matmul(weights, v)
        merged = ops.reshape(ops.permute(context, (0, 2, 1, 3)), (batch, length, self.dim))
        return merged, weights

    def __call__(self, x: Tensor) -> Tensor:
        merged, _ = self.attend(x)
        return self.W_o(merged)


class FeedForward(Module):
    def __init__(self, dim: int, hidden: int, rng: np.random.Generator):
        super().__init__()
        self.up = self.add_module("up", Linear(dim, hidden, rng))
        self.down = self.add_module("down", Linear(hidden, dim, rng))

    def __call__(self, x: Tensor) -> Tensor:
        return self.down(ops.relu(self.up(x)))


class EncoderLayer(Module):
    def __init__(
        self,
        dim: int,
        heads: int,
        ffn_dim: int,
        dropout: float,
        rng: np.random.Generator,
        dropout_rng: np.random.Generator,
    ):
        super().__init__()
        self.dropout = dropout
        self._dropout_rng = dropout_rng
        self.norm_attn = self.add_module("norm_attn", LayerNorm(dim))
        self.attn = self.add_module("attn", SelfAttention(dim, heads, rng))
        self.norm_ffn = self.add_module("norm_ffn", LayerNorm(dim))
        self.ffn = self.add_module("ffn", FeedForward(dim, ffn_dim, rng))

    def _drop(self, x: Tensor) -> Tensor:
        return ops.dropout(x, self.dropout, self._dropout_rng, self.training)

    def __call__(self, x: Tensor) -> Tensor:
        x = ops.add(x, self._drop(self.attn(self.norm_attn(x))))
        return ops.add(x, self._drop(self.ffn(self.norm_ffn(x))))


class TransformerEncoder(Module):
    """Sinusoidal positions followed by ``num_layers`` pre-norm encoder layers."""

    def __init__(
        self,
        num_layers: int,
        heads: int,
        embedding_dim: int,
        ffn_dim: int,
        dropout: float,
        rng: np.random.Generator,
        dropout_rng: Optional[np.random.Generator] = None,
        max_length: int = 512,
    ):
        super().__init__()
        if num_layers < 1:
            raise ConfigurationError(f"num_layers must be at least 1, got {num_layers}")
        if not 0.0 <= dropout < 1.0:
            raise ConfigurationError(f"dropout must lie in [0, 1), got {dropout}")
        self.num_layers = num_layers
        self.heads = heads
        self.embedding_dim = embedding_dim
        self.ffn_dim = ffn_dim
        self.dropout = dropout
        self.positional = sinusoidal_table(max_length, embedding_dim)
        dropout_rng = dropout_rng if dropout_rng is not None else np.random.default_rng(0)
        self.layers: list[EncoderLayer] = [
            self.add_module(
                f"layers.{idx}",
                EncoderLayer(embedding_dim, heads, ffn_dim, dropout, rng, dropout_rng),
            )
            for idx in range(num_layers)
        ]

    def set_dropout(self, rate: float) -> None:
        if not 0.0 <= rate < 1.0:
            raise ConfigurationError(f"dropout must lie in [0, 1), got {rate}")
        self.dropout = rate
        for layer in self.layers:
            layer.dropout = rate

    def __call__(self, x: Tensor) -> Tensor:
        if x.ndim != 3 or x.shape[-1] != self.embedding_dim or x.shape[1] < 1:
            raise ShapeMismatchError(
                f"transformer expects (B, L>=1, {self.embedding_dim}), got {x.shape}"
            )
        length = x.shape[1]
        if length > self.positional.shape[0]:
            self.positional = sinusoidal_table(length, self.embedding_dim)
        x = ops.add(x, self.positional[:length])
        for layer in self.layers:
            x = layer(x)
        return x
