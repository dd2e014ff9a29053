"""Tests for the stabilised sLSTM and mLSTM cells."""

import numpy as np
import pytest

from adsb_sentinel.models import MLstmCell, SLstmCell, run_cell
from adsb_sentinel.numerics import Tensor


def _affine(cell, name, x):
    layer = cell._children[name]
    out = x @ layer.weight.data
    return out + layer.bias.data if layer.bias is not None else out


def _sigmoid(x):
    return 1.0 / (1.0 + np.exp(-x))


def _scale_weights(cell, factor):
    for param in cell.parameters().values():
        param.data *= factor


def test_slstm_first_step_from_zero_gates():
    """With zero gate pre-activations, c = z, n = 1 and h = sigmoid(o) * z."""
    rng = np.random.default_rng(0)
    cell = SLstmCell(3, 4, rng)
    for name in ("W_i", "W_f", "R_i", "R_f"):
        cell._children[name].zero_()
    x = rng.normal(size=(1, 3))
    state, h = cell.step(cell.initial_state(1), Tensor(x))

    z = np.tanh(_affine(cell, "W_z", x))
    np.testing.assert_array_equal(state.m, np.zeros((1, 4)))
    np.testing.assert_allclose(state.c.data, z, rtol=1e-15)
    np.testing.assert_allclose(state.n.data, np.ones((1, 4)))
    np.testing.assert_allclose(h.data, _sigmoid(_affine(cell, "W_o", x)) * z, rtol=1e-14)


def test_slstm_matches_naive_recurrence():
    """Stabilised and unstabilised recurrences agree on small inputs."""
    rng = np.random.default_rng(1)
    cell = SLstmCell(3, 4, rng)
    xs = 0.1 * rng.normal(size=(50, 1, 3))

    state = cell.initial_state(1)
    c = np.zeros((1, 4))
    n = np.zeros((1, 4))
    h_naive = np.zeros((1, 4))
    for x in xs:
        state, h = cell.step(state, Tensor(x))

        def pre(gate):
            return _affine(cell, f"W_{gate}", x) + _affine(cell, f"R_{gate}", h_naive)

        z, i, f, o = np.tanh(pre("z")), np.exp(pre("i")), np.exp(pre("f")), pre("o")
        c = f * c + i * z
        n = f * n + i
        h_naive = _sigmoid(o) * c / n
        np.testing.assert_allclose(h.data, h_naive, rtol=0, atol=1e-10)


def test_mlstm_first_step_is_one_outer_product():
    rng = np.random.default_rng(2)
    cell = MLstmCell(3, 4, rng)
    cell.W_i.zero_()
    cell.W_f.zero_()
    x = rng.normal(size=(1, 3))
    state, _ = cell.step(cell.initial_state(1), Tensor(x))

    v = _affine(cell, "W_v", x)[0]
    k = _affine(cell, "W_k", x)[0] / 2.0
    np.testing.assert_allclose(state.C.data[0], np.outer(v, k), rtol=1e-15)


def test_mlstm_memory_matches_unrolled_sum():
    """C_T equals the discounted sum of gated outer products."""
    rng = np.random.default_rng(3)
    d, steps = 4, 6
    cell = MLstmCell(5, d, rng)
    xs = rng.normal(size=(steps, 1, 5))

    state = cell.initial_state(1)
    for x in xs:
        state, _ = cell.step(state, Tensor(x))

    i_pre = [_affine(cell, "W_i", x)[0, 0] for x in xs]
    f_pre = [_affine(cell, "W_f", x)[0, 0] for x in xs]
    expected = np.zeros((d, d))
    for tau, x in enumerate(xs):
        decay = np.exp(sum(f_pre[tau + 1 :]))
        v = _affine(cell, "W_v", x)[0]
        k = _affine(cell, "W_k", x)[0] / np.sqrt(d)
        expected += decay * np.exp(i_pre[tau]) * np.outer(v, k)

    unscaled = state.C.data[0] * np.exp(state.m[0, 0])
    np.testing.assert_allclose(unscaled, expected, rtol=1e-10, atol=1e-12)


def test_mlstm_output_matches_unstabilised_readout():
    rng = np.random.default_rng(4)
    d = 4
    cell = MLstmCell(5, d, rng)
    xs = rng.normal(size=(8, 1, 5))

    state = cell.initial_state(1)
    C = np.zeros((d, d))
    n = np.zeros(d)
    for x in xs:
        state, h = cell.step(state, Tensor(x))
        i = np.exp(_affine(cell, "W_i", x)[0, 0])
        f = np.exp(_affine(cell, "W_f", x)[0, 0])
        q = _affine(cell, "W_q", x)[0]
        k = _affine(cell, "W_k", x)[0] / np.sqrt(d)
        v = _affine(cell, "W_v", x)[0]
        C = f * C + i * np.outer(v, k)
        n = f * n + i * k
        h_naive = _sigmoid(_affine(cell, "W_o", x)[0]) * (C @ q) / max(abs(n @ q), 1.0)
        np.testing.assert_allclose(h.data[0], h_naive, rtol=1e-9, atol=1e-12)


@pytest.mark.slow
@pytest.mark.parametrize("cell_cls", [SLstmCell, MLstmCell])
def test_long_rollout_stays_finite(cell_cls):
    """10,000 steps with enlarged weights and N(0, 9) inputs stay finite."""
    rng = np.random.default_rng(5)
    cell = cell_cls(4, 4, rng)
    _scale_weights(cell, 5.0)
    state = cell.initial_state(1)
    for x in 3.0 * rng.normal(size=(10_000, 1, 4)):
        state, h = cell.step(state, Tensor(x))
        assert np.all(np.isfinite(h.data))
    for value in vars(state).values():
        data = value.data if isinstance(value, Tensor) else value
        assert np.all(np.isfinite(data))


@pytest.mark.parametrize("cell_cls", [SLstmCell, MLstmCell])
def test_run_cell_stacks_outputs(cell_cls):
    rng = np.random.default_rng(6)
    cell = cell_cls(3, 5, rng)
    out = run_cell(cell, Tensor(rng.normal(size=(2, 7, 3))))
    assert out.shape == (2, 7, 5)
