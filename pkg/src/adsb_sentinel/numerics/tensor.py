"""
Dense 64-bit tensors and the computation tape.

A :class:`Tape` records every differentiable operation executed while it is
active. ``Tape.backward`` walks the record in reverse and accumulates
gradients into the leaf tensors that require them. Outside an active tape no
graph is built, which is how evaluation runs.
"""

from contextvars import ContextVar
from dataclasses import dataclass
from typing import Any, Callable, Optional, Sequence

import numpy as np

from adsb_sentinel.numerics.errors import NonFiniteError, ShapeMismatchError

BackwardRule = Callable[[np.ndarray], Sequence[Optional[np.ndarray]]]

_ACTIVE_TAPE: ContextVar[Optional["Tape"]] = ContextVar("adsb_sentinel_tape", default=None)


class Tensor:
    """A dense row-major array of 64-bit floats with an optional gradient."""

    __slots__ = ("data", "requires_grad", "grad", "name", "_is_leaf", "_tape")

    def __init__(
        self,
        data: Any,
        requires_grad: bool = False,
        name: Optional[str] = None,
    ):
        self.data = np.array(data, dtype=np.float64)
        self.requires_grad = requires_grad
        self.grad: Optional[np.ndarray] = None
        self.name = name
        self._is_leaf = True
        self._tape: Optional[Tape] = None

    @property
    def shape(self) -> tuple[int, ...]:
        return self.data.shape

    @property
    def ndim(self) -> int:
        return self.data.ndim

    @property
    def size(self) -> int:
        return self.data.size

    @property
    def flat(self) -> np.ndarray:
        """Row-major flat view of the values."""
        return self.data.reshape(-1)

    def item(self) -> float:
        if self.data.size != 1:
            raise ShapeMismatchError(f"item() needs a single value, got shape {self.shape}")
        return float(self.data.reshape(-1)[0])

    def numpy(self) -> np.ndarray:
        return self.data.copy()

    def detach(self) -> "Tensor":
        return Tensor(self.data)

    def zero_grad(self) -> None:
        self.grad = None

    def backward(self) -> None:
        """Backpropagate from this scalar through the tape that recorded it."""
        if self._tape is None:
            raise RuntimeError("tensor was not produced under an active tape")
        self._tape.backward(self)

    def __repr__(self) -> str:
        label = f", name={self.name!r}" if self.name else ""
        return f"Tensor(shape={self.shape}, requires_grad={self.requires_grad}{label})"

    # Arithmetic delegates to the differentiable ops.
    def __add__(self, other):
        from adsb_sentinel.numerics import ops

        return ops.add(self, other)

    def __radd__(self, other):
        from adsb_sentinel.numerics import ops

        return ops.add(other, self)

    def __sub__(self, other):
        from adsb_sentinel.numerics import ops

        return ops.sub(self, other)

    def __rsub__(self, other):
        from adsb_sentinel.numerics import ops

        return ops.sub(other, self)

    def __mul__(self, other):
        from adsb_sentinel.numerics import ops

        return ops.mul(self, other)

    def __rmul__(self, other):
        from adsb_sentinel.numerics import ops

        return ops.mul(other, self)

    def __truediv__(self, other):
        from adsb_sentinel.numerics import ops

        return ops.div(self, other)

    def __neg__(self):
        from adsb_sentinel.numerics import ops

        return ops.neg(self)

    def __matmul__(self, other):
        from adsb_sentinel.numerics import ops

        return ops.matmul(self, other)

    def __getitem__(self, index):
        from adsb_sentinel.numerics import ops

        return ops.index(self, index)


def as_tensor(value: Any) -> Tensor:
    """Wrap scalars and arrays as constant tensors; pass tensors through."""
    return value if isinstance(value, Tensor) else Tensor(value)


@dataclass
class TapeEntry:
    """One executed operation: its inputs, its output and its local backward rule."""

    op: str
    inputs: tuple[Tensor, ...]
    output: Tensor
    backward: BackwardRule


class Tape:
    """Ordered record of differentiable operations.

    Use as a context manager; operations executed inside the block are
    recorded when at least one input requires a gradient.
    """

    def __init__(self):
        self.entries: list[TapeEntry] = []
        self._token = None

    def __enter__(self) -> "Tape":
        self._token = _ACTIVE_TAPE.set(self)
        return self

    def __exit__(self, exc_type, exc_val, exc_tb) -> None:
        _ACTIVE_TAPE.reset(self._token)
        self._token = None

    def __len__(self) -> int:
        return len(self.entries)

    def record(
        self,
        op: str,
        inputs: tuple[Tensor, ...],
        output: Tensor,
        backward: BackwardRule,
    ) -> None:
        output.requires_grad = True
        output._is_leaf = False
        output._tape = self
        self.entries.append(TapeEntry(op, inputs, output, backward))

    def backward(self, loss: Tensor) -> None:
        """Accumulate d(loss)/d(leaf) into every requires_grad leaf.

        Each recorded use of a tensor contributes once; the tape is cleared
        afterwards.
        """
        if loss.size != 1:
            raise ShapeMismatchError(f"backward needs a scalar loss, got shape {loss.shape}")

        grads: dict[int, np.ndarray] = {id(loss): np.ones_like(loss.data)}
        leaves: dict[int, Tensor] = {}

        for entry in reversed(self.entries):
            upstream = grads.pop(id(entry.output), None)
            if upstream is None:
                continue
            local = entry.backward(upstream)
            for tensor, grad in zip(entry.inputs, local):
                if grad is None or not tensor.requires_grad:
                    continue
                key = id(tensor)
                if key in grads:
                    grads[key] = grads[key] + grad
                else:
                    grads[key] = grad
                if tensor._is_leaf:
                    leaves[key] = tensor

        for key, tensor in leaves.items():
            grad = grads[key]
            if not np.all(np.isfinite(grad)):
                raise NonFiniteError(f"non-finite gradient for {tensor.name or tensor!r}")
            tensor.grad = grad.copy() if tensor.grad is None else tensor.grad + grad

        self.entries.clear()


def active_tape() -> Optional[Tape]:
    """The tape recording in the current context, if any."""
    return _ACTIVE_TAPE.get()
