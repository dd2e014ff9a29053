"""
Residual xLSTM block stack.

Each block computes ``y = x + out_proj(cell_sequence(layer_norm(x)))``; blocks at
the configured sLSTM positions use an sLSTM cell, the rest use mLSTM.
"""

from collections.abc import Iterable

import numpy as np

from adsb_sentinel.errors import ConfigurationError
from adsb_sentinel.models.cells import MLstmCell, SLstmCell, run_cell
from adsb_sentinel.models.layers import LayerNorm, Linear, Module
from adsb_sentinel.numerics import ShapeMismatchError, Tensor, ops


class XLstmBlock(Module):
    def __init__(self, kind: str, dim: int, rng: np.random.Generator):
        super().__init__()
        if kind not in ("slstm", "mlstm"):
            raise ConfigurationError(f"unknown xLSTM block kind: {kind}")
        self.kind = kind
        self.norm = self.add_module("norm", LayerNorm(dim))
        cell_cls = SLstmCell if kind == "slstm" else MLstmCell
        self.cell = self.add_module("cell", cell_cls(dim, dim, rng))
        self.out_proj = self.add_module("out_proj", Linear(dim, dim, rng))

    def __call__(self, x: Tensor) -> Tensor:
        return ops.add(x, self.out_proj(run_cell(self.cell, self.norm(x))))


class XLstmStack(Module):
    """A stack of residual sLSTM/mLSTM blocks over (B, L, embedding_dim) inputs.

    Args:
        num_blocks: Number of residual blocks
        slstm_positions: Block indices that use an sLSTM cell
        embedding_dim: Width of every block
        heads: Memory heads; only a single head is supported
        rng: Generator used for parameter initialisation
    """

    def __init__(
        self,
        num_blocks: int,
        slstm_positions: Iterable[int],
        embedding_dim: int,
        heads: int,
        rng: np.random.Generator,
    ):
        super().__init__()
        positions = frozenset(int(p) for p in slstm_positions)
        if num_blocks < 1:
            raise ConfigurationError(f"num_blocks must be at least 1, got {num_blocks}")
        if heads != 1:
            raise ConfigurationError(f"xLSTM supports a single memory head, got heads={heads}")
        out_of_range = sorted(p for p in positions if not 0 <= p < num_blocks)
        if out_of_range:
            raise ConfigurationError(
                f"slstm_positions {out_of_range} outside block range 0..{num_blocks - 1}"
            )
        self.num_blocks = num_blocks
        self.slstm_positions = positions
        self.embedding_dim = embedding_dim
        self.heads = heads
        self.blocks: list[XLstmBlock] = []
        for idx in range(num_blocks):
            kind = "slstm" if idx in positions else "mlstm"
            block = XLstmBlock(kind, embedding_dim, rng)
            self.blocks.append(self.add_module(f"blocks.{idx}", block))

    def block_kinds(self) -> list[str]:
        return [block.kind for block in self.blocks]

    def __call__(self, x: Tensor) -> Tensor:
        if x.ndim != 3 or x.shape[-1] != self.embedding_dim or x.shape[1] < 1:
            raise ShapeMismatchError(
                f"xLSTM stack expects (B, L>=1, {self.embedding_dim}), got {x.shape}"
            )
        for block in self.blocks:
            x = block(x)
        return x
