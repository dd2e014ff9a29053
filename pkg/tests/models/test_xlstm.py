"""Tests for the residual xLSTM block stack."""

import numpy as np
import pytest

from adsb_sentinel.errors import ConfigurationError
from adsb_sentinel.models import XLstmStack
from adsb_sentinel.numerics import ShapeMismatchError, Tensor


def _stack(num_blocks=2, positions=(1,), dim=8, seed=0):
    return XLstmStack(num_blocks, positions, dim, 1, np.random.default_rng(seed))


def test_block_kinds_follow_slstm_positions():
    stack = _stack(num_blocks=4, positions=(1,))
    assert stack.block_kinds() == ["mlstm", "slstm", "mlstm", "mlstm"]


@pytest.mark.parametrize("length", [1, 10, 50])
def test_shape_is_preserved(length):
    stack = _stack(dim=16)
    x = Tensor(np.random.default_rng(1).normal(size=(2, length, 16)))
    assert stack(x).shape == (2, length, 16)


def test_zero_output_projection_gives_identity():
    stack = _stack()
    for block in stack.blocks:
        block.out_proj.zero_()
    x = np.random.default_rng(2).normal(size=(1, 6, 8))
    np.testing.assert_array_equal(stack(Tensor(x)).data, x)


def test_causality():
    """Changing the input at t = 30 leaves earlier outputs untouched."""
    stack = _stack(dim=8)
    x = np.random.default_rng(3).normal(size=(1, 40, 8))
    perturbed = x.copy()
    perturbed[0, 30] += 1.0
    base = stack(Tensor(x)).data
    moved = stack(Tensor(perturbed)).data
    np.testing.assert_array_equal(base[:, :30], moved[:, :30])
    assert not np.array_equal(base[:, 30], moved[:, 30])


def test_parameter_names_are_dotted():
    names = list(_stack().parameters())
    assert "blocks.0.cell.W_q.weight" in names
    assert "blocks.1.cell.R_z.weight" in names
    assert "blocks.1.out_proj.bias" in names


@pytest.mark.parametrize(
    "kwargs",
    [
        {"num_blocks": 2, "positions": (2,)},
        {"num_blocks": 2, "positions": (-1,)},
        {"num_blocks": 0, "positions": ()},
    ],
)
def test_invalid_layout_is_rejected(kwargs):
    with pytest.raises(ConfigurationError):
        _stack(**kwargs)


def test_multiple_heads_are_rejected():
    with pytest.raises(ConfigurationError):
        XLstmStack(2, (1,), 8, 2, np.random.default_rng(0))


def test_wrong_input_width_is_rejected():
    with pytest.raises(ShapeMismatchError):
        _stack()(Tensor(np.zeros((1, 4, 6))))
