"""
sLSTM and mLSTM cells with stabilised exponential gating.

Both cells carry a log-domain stabiliser ``m`` so that the exponential gates
never overflow. ``m`` is a constant with respect to differentiation: the cell
output is mathematically independent of it.

All tensors are batched: inputs are (B, d_in), hidden quantities (B, d).
"""

import math
from dataclasses import dataclass

import numpy as np

from adsb_sentinel.models.layers import Linear, Module
from adsb_sentinel.numerics import Tensor, ops

# Guards c / n before the first non-vanishing input gate has fired.
NORMALIZER_FLOOR = 1e-300
# Caps exp(-m) for the mLSTM normaliser floor.
EXP_FLOOR_LIMIT = 700.0


@dataclass
class SLstmCellState:
    c: Tensor
    n: Tensor
    h: Tensor
    m: np.ndarray


@dataclass
class MLstmCellState:
    C: Tensor
    n: Tensor
    m: np.ndarray


class SLstmCell(Module):
    """Scalar-memory cell with recurrent mixing through R matrices."""

    def __init__(self, input_dim: int, hidden_dim: int, rng: np.random.Generator):
        super().__init__()
        self.input_dim = input_dim
        self.hidden_dim = hidden_dim
        for gate in ("z", "i", "f", "o"):
            self.add_module(f"W_{gate}", Linear(input_dim, hidden_dim, rng))
            self.add_module(f"R_{gate}", Linear(hidden_dim, hidden_dim, rng, bias=False))

    def initial_state(self, batch: int) -> SLstmCellState:
        zeros = np.zeros((batch, self.hidden_dim))
        return SLstmCellState(
            c=Tensor(zeros), n=Tensor(zeros), h=Tensor(zeros), m=zeros.copy()
        )

    def _pre(self, gate: str, x: Tensor, h: Tensor) -> Tensor:
        return ops.add(self._children[f"W_{gate}"](x), self._children[f"R_{gate}"](h))

    def step(self, state: SLstmCellState, x: Tensor) -> tuple[SLstmCellState, Tensor]:
        z = ops.tanh(self._pre("z", x, state.h))
        i_pre = self._pre("i", x, state.h)
        f_pre = self._pre("f", x, state.h)
        o_pre = self._pre("o", x, state.h)

        m_new = np.maximum(f_pre.data + state.m, i_pre.data)
        i_gate = ops.exp(ops.sub(i_pre, m_new), site="slstm.input_gate")
        f_gate = ops.exp(ops.add(f_pre, state.m - m_new), site="slstm.forget_gate")

        c = ops.add(ops.mul(f_gate, state.c), ops.mul(i_gate, z))
        n = ops.add(ops.mul(f_gate, state.n), i_gate)
        h = ops.mul(ops.sigmoid(o_pre), ops.div(c, ops.max_scalar(n, NORMALIZER_FLOOR)))
        return SLstmCellState(c=c, n=n, h=h, m=m_new), h


class MLstmCell(Module):
    """Matrix-memory cell with a covariance (outer-product) update.

    Gates and query/key/value projections read the current input only.
    """

    def __init__(self, input_dim: int, hidden_dim: int, rng: np.random.Generator):
        super().__init__()
        self.input_dim = input_dim
        self.hidden_dim = hidden_dim
        self.W_q = self.add_module("W_q", Linear(input_dim, hidden_dim, rng))
        self.W_k = self.add_module("W_k", Linear(input_dim, hidden_dim, rng))
        self.W_v = self.add_module("W_v", Linear(input_dim, hidden_dim, rng))
        self.W_i = self.add_module("W_i", Linear(input_dim, 1, rng))
        self.W_f = self.add_module("W_f", Linear(input_dim, 1, rng))
        self.W_o = self.add_module("W_o", Linear(input_dim, hidden_dim, rng))

    def initial_state(self, batch: int) -> MLstmCellState:
        d = self.hidden_dim
        return MLstmCellState(
            C=Tensor(np.zeros((batch, d, d))),
            n=Tensor(np.zeros((batch, d))),
            m=np.zeros((batch, 1)),
        )

    def step(self, state: MLstmCellState, x: Tensor) -> tuple[MLstmCellState, Tensor]:
        batch, d = x.shape[0], self.hidden_dim
        q = self.W_q(x)
        k = ops.mul(self.W_k(x), 1.0 / math.sqrt(d))
        v = self.W_v(x)
        i_pre = self.W_i(x)
        f_pre = self.W_f(x)

        m_new = np.maximum(f_pre.data + state.m, i_pre.data)
        i_gate = ops.exp(ops.sub(i_pre, m_new), site="mlstm.input_gate")
        f_gate = ops.exp(ops.add(f_pre, state.m - m_new), site="mlstm.forget_gate")

        outer = ops.matmul(ops.reshape(v, (batch, d, 1)), ops.reshape(k, (batch, 1, d)))
        C = ops.add(
            ops.mul(ops.reshape(f_gate, (batch, 1, 1)), state.C),
            ops.mul(ops.reshape(i_gate, (batch, 1, 1)), outer),
        )
        n = ops.add(ops.mul(f_gate, state.n), ops.mul(i_gate, k))

        retrieved = ops.reshape(ops.matmul(C, ops.reshape(q, (batch, d, 1))), (batch, d))
        overlap = ops.sum(ops.mul(n, q), axis=-1, keepdims=True)
        # C and n are stored scaled by exp(-m), so the unit floor scales with them.
        floor = Tensor(np.maximum(np.exp(np.minimum(-m_new, EXP_FLOOR_LIMIT)), NORMALIZER_FLOOR))
        h_tilde = ops.div(retrieved, ops.maximum(ops.abs(overlap), floor))
        h = ops.mul(ops.sigmoid(self.W_o(x)), h_tilde)
        return MLstmCellState(C=C, n=n, m=m_new), h


def run_cell(cell, x: Tensor) -> Tensor:
    """Run a cell over a (B, L, d) sequence and stack the hidden outputs."""
    batch, length = x.shape[0], x.shape[1]
    state = cell.initial_state(batch)
    outputs = []
    for t in range(length):
        state, h = cell.step(state, ops.index(x, (slice(None), t, slice(None))))
        outputs.append(h)
    return ops.stack(outputs, axis=1)
