"""
Differentiable operations.

Every operation computes its forward value with numpy, checks that the result
is finite, and records a local backward rule on the active tape when one of
its inputs requires a gradient. Binary operations follow numpy broadcasting;
gradients are summed back to each operand's shape.
"""

from typing import Any, Optional, Sequence

import numpy as np

from adsb_sentinel.numerics.errors import (
    DomainError,
    NonFiniteError,
    OverflowError,
    ShapeMismatchError,
)
from adsb_sentinel.numerics.tensor import Tensor, active_tape, as_tensor

EXP_LIMIT = 700.0


def _finite(op: str, values: np.ndarray) -> np.ndarray:
    if not np.all(np.isfinite(values)):
        raise NonFiniteError(f"{op} produced non-finite values")
    return values


def _emit(op: str, inputs: tuple[Tensor, ...], values: np.ndarray, backward) -> Tensor:
    out = Tensor.__new__(Tensor)
    out.data = _finite(op, np.asarray(values, dtype=np.float64))
    out.requires_grad = False
    out.grad = None
    out.name = None
    out._is_leaf = True
    out._tape = None
    tape = active_tape()
    if tape is not None and any(t.requires_grad for t in inputs):
        tape.record(op, inputs, out, backward)
    return out


def _unbroadcast(grad: np.ndarray, shape: tuple[int, ...]) -> np.ndarray:
    while grad.ndim > len(shape):
        grad = grad.sum(axis=0)
    for axis, size in enumerate(shape):
        if size == 1 and grad.shape[axis] != 1:
            grad = grad.sum(axis=axis, keepdims=True)
    return grad


def _check_broadcast(op: str, a: Tensor, b: Tensor) -> None:
    try:
        np.broadcast_shapes(a.shape, b.shape)
    except ValueError as e:
        raise ShapeMismatchError(f"{op}: cannot combine shapes {a.shape} and {b.shape}") from e


# Binary elementwise


def add(a: Any, b: Any) -> Tensor:
    a, b = as_tensor(a), as_tensor(b)
    _check_broadcast("add", a, b)
    return _emit(
        "add",
        (a, b),
        a.data + b.data,
        lambda g: (_unbroadcast(g, a.shape), _unbroadcast(g, b.shape)),
    )


def sub(a: Any, b: Any) -> Tensor:
    a, b = as_tensor(a), as_tensor(b)
    _check_broadcast("sub", a, b)
    return _emit(
        "sub",
        (a, b),
        a.data - b.data,
        lambda g: (_unbroadcast(g, a.shape), _unbroadcast(-g, b.shape)),
    )


def mul(a: Any, b: Any) -> Tensor:
    a, b = as_tensor(a), as_tensor(b)
    _check_broadcast("mul", a, b)
    return _emit(
        "mul",
        (a, b),
        a.data * b.data,
        lambda g: (_unbroadcast(g * b.data, a.shape), _unbroadcast(g * a.data, b.shape)),
    )


def div(a: Any, b: Any) -> Tensor:
    a, b = as_tensor(a), as_tensor(b)
    _check_broadcast("div", a, b)
    if np.any(b.data == 0.0):
        raise DomainError("div: division by zero")
    return _emit(
        "div",
        (a, b),
        a.data / b.data,
        lambda g: (
            _unbroadcast(g / b.data, a.shape),
            _unbroadcast(-g * a.data / (b.data * b.data), b.shape),
        ),
    )


def neg(a: Any) -> Tensor:
    a = as_tensor(a)
    return _emit("neg", (a,), -a.data, lambda g: (-g,))


# Unary elementwise


def sigmoid(a: Any) -> Tensor:
    a = as_tensor(a)
    s = 0.5 * (1.0 + np.tanh(0.5 * a.data))
    return _emit("sigmoid", (a,), s, lambda g: (g * s * (1.0 - s),))


def tanh(a: Any) -> Tensor:
    a = as_tensor(a)
    t = np.tanh(a.data)
    return _emit("tanh", (a,), t, lambda g: (g * (1.0 - t * t),))


def exp(a: Any, site: Optional[str] = None) -> Tensor:
    """Elementwise exponential; arguments above 700 raise instead of overflowing."""
    a = as_tensor(a)
    peak = float(np.max(a.data)) if a.size else 0.0
    if peak > EXP_LIMIT:
        where = site or a.name or "exp"
        raise OverflowError(f"exp overflow at {where}: argument {peak:.6g} > {EXP_LIMIT:g}")
    e = np.exp(a.data)
    return _emit("exp", (a,), e, lambda g: (g * e,))


def log(a: Any) -> Tensor:
    a = as_tensor(a)
    if a.size and float(np.min(a.data)) <= 0.0:
        raise DomainError(f"log of non-positive value {float(np.min(a.data)):.6g}")
    return _emit("log", (a,), np.log(a.data), lambda g: (g / a.data,))


def max_scalar(a: Any, floor: float) -> Tensor:
    """Elementwise max(a, floor); the gradient passes where a exceeds the floor."""
    a = as_tensor(a)
    passed = a.data > floor
    return _emit("max_scalar", (a,), np.maximum(a.data, floor), lambda g: (g * passed,))


def maximum(a: Any, b: Any) -> Tensor:
    """Elementwise max of two tensors; ties send the gradient to ``a``."""
    a, b = as_tensor(a), as_tensor(b)
    _check_broadcast("maximum", a, b)
    first = a.data >= b.data
    return _emit(
        "maximum",
        (a, b),
        np.maximum(a.data, b.data),
        lambda g: (_unbroadcast(g * first, a.shape), _unbroadcast(g * ~first, b.shape)),
    )


def relu(a: Any) -> Tensor:
    return max_scalar(a, 0.0)


def abs(a: Any) -> Tensor:  # noqa: A001
    a = as_tensor(a)
    return _emit("abs", (a,), np.abs(a.data), lambda g: (g * np.sign(a.data),))


# Linear algebra


def matmul(a: Any, b: Any) -> Tensor:
    """Matrix product over the last two axes, batched over leading axes."""
    a, b = as_tensor(a), as_tensor(b)
    if a.ndim < 2 or b.ndim < 2 or a.shape[-1] != b.shape[-2]:
        raise ShapeMismatchError(f"matmul: shapes {a.shape} and {b.shape} do not align")

    def backward(g):
        ga = g @ np.swapaxes(b.data, -1, -2)
        gb = np.swapaxes(a.data, -1, -2) @ g
        return _unbroadcast(ga, a.shape), _unbroadcast(gb, b.shape)

    return _emit("matmul", (a, b), a.data @ b.data, backward)


# Reductions and shape manipulation


def sum(a: Any, axis: Optional[int] = None, keepdims: bool = False) -> Tensor:  # noqa: A001
    a = as_tensor(a)

    def backward(g):
        if axis is not None and not keepdims:
            g = np.expand_dims(g, axis)
        return (np.broadcast_to(g, a.shape).copy(),)

    return _emit("sum", (a,), np.sum(a.data, axis=axis, keepdims=keepdims), backward)


def mean(a: Any, axis: Optional[int] = None, keepdims: bool = False) -> Tensor:
    a = as_tensor(a)
    count = a.size if axis is None else a.shape[axis]

    def backward(g):
        if axis is not None and not keepdims:
            g = np.expand_dims(g, axis)
        return (np.broadcast_to(g, a.shape) / count,)

    return _emit("mean", (a,), np.mean(a.data, axis=axis, keepdims=keepdims), backward)


def reshape(a: Any, shape: Sequence[int]) -> Tensor:
    a = as_tensor(a)
    try:
        values = a.data.reshape(tuple(shape))
    except ValueError as e:
        raise ShapeMismatchError(f"reshape: cannot view {a.shape} as {tuple(shape)}") from e
    return _emit("reshape", (a,), values, lambda g: (g.reshape(a.shape),))


def transpose(a: Any) -> Tensor:
    """Swap the last two axes."""
    a = as_tensor(a)
    return _emit(
        "transpose", (a,), np.swapaxes(a.data, -1, -2), lambda g: (np.swapaxes(g, -1, -2),)
    )


def permute(a: Any, axes: Sequence[int]) -> Tensor:
    """Reorder axes."""
    a = as_tensor(a)
    axes = tuple(axes)
    inverse = tuple(int(i) for i in np.argsort(axes))
    return _emit(
        "permute", (a,), np.transpose(a.data, axes), lambda g: (np.transpose(g, inverse),)
    )


def _is_basic_key(key: Any) -> bool:
    parts = key if isinstance(key, tuple) else (key,)
    return all(isinstance(p, (int, np.integer, slice, type(Ellipsis), type(None))) for p in parts)


def index(a: Any, key: Any) -> Tensor:
    a = as_tensor(a)
    basic = _is_basic_key(key)

    def backward(g):
        full = np.zeros_like(a.data)
        if basic:
            full[key] += g
        else:
            np.add.at(full, key, g)
        return (full,)

    return _emit("index", (a,), np.array(a.data[key]), backward)


def stack(tensors: Sequence[Tensor], axis: int = 0) -> Tensor:
    tensors = tuple(as_tensor(t) for t in tensors)
    shapes = {t.shape for t in tensors}
    if len(shapes) != 1:
        raise ShapeMismatchError(f"stack: shapes differ {sorted(shapes)}")

    def backward(g):
        return tuple(np.take(g, i, axis=axis) for i in range(len(tensors)))

    return _emit("stack", tensors, np.stack([t.data for t in tensors], axis=axis), backward)


# Normalisation and attention helpers


def softmax_rows(a: Any, mask: Optional[np.ndarray] = None) -> Tensor:
    """Softmax over the last axis with max-subtraction.

    Args:
        a: Scores
        mask: Optional boolean array broadcastable to ``a``; False entries get
            zero probability. Every row must keep at least one entry.
    """
    a = as_tensor(a)
    if a.ndim < 1 or a.shape[-1] < 1:
        raise ShapeMismatchError(f"softmax_rows: empty last axis in shape {a.shape}")
    scores = a.data if mask is None else np.where(mask, a.data, -np.inf)
    shifted = scores - np.max(scores, axis=-1, keepdims=True)
    e = np.exp(shifted)
    y = e / np.sum(e, axis=-1, keepdims=True)

    def backward(g):
        return (y * (g - np.sum(g * y, axis=-1, keepdims=True)),)

    return _emit("softmax_rows", (a,), y, backward)


def layer_norm(a: Any, gain: Any, bias: Any, eps: float = 1e-5) -> Tensor:
    """Normalise the last axis to zero mean and unit population variance, then scale.

    A constant input normalises to zeros before the affine step.
    """
    a, gain, bias = as_tensor(a), as_tensor(gain), as_tensor(bias)
    d = a.shape[-1] if a.ndim else 0
    if d < 2:
        raise ShapeMismatchError(f"layer_norm needs a last axis of at least 2, got {a.shape}")
    if gain.shape != (d,) or bias.shape != (d,):
        raise ShapeMismatchError(
            f"layer_norm: gain {gain.shape} / bias {bias.shape} do not match last axis {d}"
        )
    mu = a.data.mean(axis=-1, keepdims=True)
    centered = a.data - mu
    inv_std = 1.0 / np.sqrt((centered * centered).mean(axis=-1, keepdims=True) + eps)
    xhat = centered * inv_std
    lead = tuple(range(a.ndim - 1))

    def backward(g):
        dxhat = g * gain.data
        dx = inv_std * (
            dxhat
            - dxhat.mean(axis=-1, keepdims=True)
            - xhat * (dxhat * xhat).mean(axis=-1, keepdims=True)
        )
        return dx, np.sum(g * xhat, axis=lead), np.sum(g, axis=lead)

    return _emit("layer_norm", (a, gain, bias), xhat * gain.data + bias.data, backward)


def dropout(a: Any, rate: float, rng: np.random.Generator, training: bool) -> Tensor:
    """Inverted dropout; the identity in evaluation mode or at rate 0."""
    a = as_tensor(a)
    if not training or rate <= 0.0:
        return a
    keep = (rng.random(a.shape) >= rate) / (1.0 - rate)
    return _emit("dropout", (a,), a.data * keep, lambda g: (g * keep,))


_ELEMENTWISE = {
    "add": add,
    "sub": sub,
    "mul": mul,
    "div": div,
    "sigmoid": sigmoid,
    "tanh": tanh,
    "exp": exp,
    "log": log,
    "max_scalar": max_scalar,
    "maximum": maximum,
}


def elementwise(op: str, *args: Any) -> Tensor:
    """Dispatch an elementwise operation by name."""
    try:
        fn = _ELEMENTWISE[op]
    except KeyError as e:
        raise ValueError(f"unknown elementwise op: {op}") from e
    return fn(*args)
