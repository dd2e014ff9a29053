"""Tests for tensors and the computation tape."""

import numpy as np
import pytest

from adsb_sentinel.numerics import (
    NonFiniteError,
    ShapeMismatchError,
    Tape,
    Tensor,
    active_tape,
    as_tensor,
    ops,
)


def test_tensor_is_float64():
    t = Tensor([[1, 2], [3, 4]])
    assert t.data.dtype == np.float64
    assert t.shape == (2, 2)
    assert t.ndim == 2
    assert t.size == 4
    assert t.flat.tolist() == [1.0, 2.0, 3.0, 4.0]


def test_item_requires_a_single_value():
    assert Tensor([[7.0]]).item() == 7.0
    with pytest.raises(ShapeMismatchError):
        Tensor([1.0, 2.0]).item()


def test_numpy_returns_a_copy():
    t = Tensor([1.0])
    values = t.numpy()
    values[0] = 5.0
    assert t.data[0] == 1.0


def test_as_tensor_passes_tensors_through():
    t = Tensor([1.0])
    assert as_tensor(t) is t
    assert isinstance(as_tensor(2.0), Tensor)


def test_tape_is_active_only_inside_the_block():
    assert active_tape() is None
    with Tape() as tape:
        assert active_tape() is tape
    assert active_tape() is None


def test_nothing_is_recorded_without_trainable_inputs():
    with Tape() as tape:
        ops.add(Tensor([1.0]), Tensor([2.0]))
    assert len(tape) == 0


def test_nothing_is_recorded_outside_a_tape():
    w = Tensor([1.0], requires_grad=True)
    out = ops.mul(w, 2.0)
    assert out._tape is None
    with pytest.raises(RuntimeError):
        ops.sum(out).backward()


def test_operators_delegate_to_ops():
    a = Tensor([[1.0, 2.0]], requires_grad=True)
    b = Tensor([[3.0], [4.0]])
    with Tape():
        out = ((a @ b) * 2.0 - 1.0 + a[:, :1] / 1.0) * -1.0
        total = -ops.sum(out)
    total.backward()
    np.testing.assert_allclose(a.grad, [[2 * 3.0 + 1.0, 2 * 4.0]])


def test_backward_needs_a_scalar():
    w = Tensor([1.0, 2.0], requires_grad=True)
    with Tape() as tape:
        out = ops.mul(w, 2.0)
    with pytest.raises(ShapeMismatchError):
        tape.backward(out)


def test_backward_clears_the_tape():
    w = Tensor([1.0], requires_grad=True)
    with Tape() as tape:
        out = ops.sum(ops.mul(w, w))
    tape.backward(out)
    assert len(tape) == 0


def test_non_finite_gradient_is_rejected():
    w = Tensor([1e-300], requires_grad=True)
    with Tape() as tape:
        out = ops.sum(ops.div(1.0, w))
    with pytest.raises(NonFiniteError):
        tape.backward(out)


def test_detach_drops_the_graph():
    w = Tensor([3.0], requires_grad=True)
    detached = w.detach()
    assert not detached.requires_grad
    np.testing.assert_array_equal(detached.data, w.data)
