"""Dense-tensor math with reverse-mode differentiation.

Small, closed operation set sized for the fusion models in this package:
matrix product, position-wise affine maps, row softmax, the usual pointwise
activations, row layer norm, concatenation, time pooling, dropout and a
stable softmax cross entropy.  Tensors wrap 2-D (or 1-D for biases) numpy
arrays; float32 is the training precision and float64 exists so gradient
checks can run at tight tolerances.

Forward ops never mutate their inputs and record lineage on the output
tensor, so a backward pass is a topological walk over that lineage.
"""

from __future__ import annotations

import threading
from typing import Callable, Iterable, Sequence

import numpy as np

__all__ = [
    "Tensor",
    "ShapeError",
    "NonFiniteError",
    "tensor",
    "constant",
    "parameter",
    "no_grad",
    "grad_enabled",
    "matmul",
    "transpose",
    "affine",
    "add",
    "multiply",
    "scale",
    "concat_rows",
    "concat_cols",
    "slice_cols",
    "mean_rows",
    "softmax_rows",
    "leaky_relu",
    "relu",
    "tanh",
    "sigmoid",
    "layer_norm",
    "dropout",
    "cross_entropy",
    "backward",
    "gradients",
    "numerical_gradient",
    "grad_check",
]


class ShapeError(ValueError):
    """Operand shapes do not satisfy an op's contract."""


class NonFiniteError(FloatingPointError):
    """A forward op produced NaN or Inf."""


_grad_state = threading.local()


def grad_enabled() -> bool:
    return getattr(_grad_state, "enabled", True)


class no_grad:
    """Context manager that disables lineage recording (pure evaluation)."""

    def __enter__(self):
        self._prev = grad_enabled()
        _grad_state.enabled = False
        return self

    def __exit__(self, *exc):
        _grad_state.enabled = self._prev
        return False


def _check_finite(arr: np.ndarray, op: str) -> None:
    # np.sum in float64 turns any NaN/Inf in the payload into a non-finite
    # total without allocating a bool mask; overflow of the finite sum is
    # not reachable at the magnitudes these models produce.
    if not np.isfinite(np.sum(arr, dtype=np.float64)):
        raise NonFiniteError(f"{op} produced non-finite values")


class Tensor:
    """A numpy array plus optional recorded lineage for backprop.

    Treat instances as immutable values: ops return new tensors and never
    write into `data`.  The one sanctioned exception is the owner of a
    parameter (optimizer / gradient checker) mutating `data` between steps.
    """

    __slots__ = ("data", "requires_grad", "grad", "_parents", "_backward", "op")

    def __init__(
        self,
        data: np.ndarray,
        requires_grad: bool = False,
        parents: tuple["Tensor", ...] = (),
        backward_fn: Callable[[np.ndarray], None] | None = None,
        op: str = "leaf",
    ):
        self.data = data
        self.requires_grad = requires_grad
        self.grad: np.ndarray | None = None
        self._parents = parents
        self._backward = backward_fn
        self.op = op

    @property
    def shape(self) -> tuple[int, ...]:
        return self.data.shape

    @property
    def dtype(self):
        return self.data.dtype

    def item(self) -> float:
        if self.data.size != 1:
            raise ShapeError(f"item() needs a single-element tensor, got shape {self.shape}")
        return float(self.data.reshape(-1)[0])

    def backward(self) -> None:
        backward(self)

    def __repr__(self) -> str:
        return f"Tensor(shape={self.shape}, op={self.op}, requires_grad={self.requires_grad})"

    def __add__(self, other: "Tensor") -> "Tensor":
        return add(self, other)

    def __mul__(self, other: "Tensor") -> "Tensor":
        return multiply(self, other)

    def __matmul__(self, other: "Tensor") -> "Tensor":
        return matmul(self, other)


def tensor(values, dtype=np.float32, requires_grad: bool = False) -> Tensor:
    arr = np.asarray(values, dtype=dtype)
    _check_finite(arr, "tensor")
    return Tensor(arr, requires_grad=requires_grad)


def constant(values, dtype=np.float32) -> Tensor:
    return tensor(values, dtype=dtype, requires_grad=False)


def parameter(values, dtype=np.float32) -> Tensor:
    return tensor(values, dtype=dtype, requires_grad=True)


def _result(
    data: np.ndarray,
    parents: Sequence[Tensor],
    backward_fn: Callable[[np.ndarray], None],
    op: str,
) -> Tensor:
    _check_finite(data, op)
    if grad_enabled() and any(p.requires_grad for p in parents):
        return Tensor(data, requires_grad=True, parents=tuple(parents), backward_fn=backward_fn, op=op)
    return Tensor(data, op=op)


def _accumulate(t: Tensor, g: np.ndarray) -> None:
    if t.grad is None:
        t.grad = g.astype(t.data.dtype, copy=True)
    else:
        t.grad = t.grad + g


# ---------------------------------------------------------------------------
# linear algebra


def matmul(a: Tensor, b: Tensor) -> Tensor:
    if a.data.ndim != 2 or b.data.ndim != 2:
        raise ShapeError(f"matmul needs 2-D operands, got {a.shape} and {b.shape}")
    if a.shape[1] != b.shape[0]:
        raise ShapeError(f"matmul inner dimensions disagree: {a.shape} x {b.shape}")
    out = a.data @ b.data

    def backward_fn(g: np.ndarray) -> None:
        if a.requires_grad:
            _accumulate(a, g @ b.data.T)
        if b.requires_grad:
            _accumulate(b, a.data.T @ g)

    return _result(out, (a, b), backward_fn, "matmul")


def transpose(x: Tensor) -> Tensor:
    if x.data.ndim != 2:
        raise ShapeError(f"transpose needs a 2-D tensor, got {x.shape}")
    out = x.data.T.copy()

    def backward_fn(g: np.ndarray) -> None:
        if x.requires_grad:
            _accumulate(x, g.T)

    return _result(out, (x,), backward_fn, "transpose")


def affine(x: Tensor, w: Tensor, b: Tensor) -> Tensor:
    """Row-wise x @ w + b; the kernel-1 convolution over time."""
    if x.data.ndim != 2 or w.data.ndim != 2:
        raise ShapeError(f"affine needs 2-D x and w, got {x.shape} and {w.shape}")
    if x.shape[1] != w.shape[0]:
        raise ShapeError(f"affine input width {x.shape} does not match weight {w.shape}")
    if b.data.ndim != 1 or b.shape[0] != w.shape[1]:
        raise ShapeError(f"affine bias shape {b.shape} does not match weight {w.shape}")
    out = x.data @ w.data + b.data

    def backward_fn(g: np.ndarray) -> None:
        if x.requires_grad:
            _accumulate(x, g @ w.data.T)
        if w.requires_grad:
            _accumulate(w, x.data.T @ g)
        if b.requires_grad:
            _accumulate(b, g.sum(axis=0))

    return _result(out, (x, w, b), backward_fn, "affine")


# ---------------------------------------------------------------------------
# elementwise


def add(a: Tensor, b: Tensor) -> Tensor:
    if a.shape != b.shape:
        raise ShapeError(f"add needs equal shapes, got {a.shape} and {b.shape}")
    out = a.data + b.data

    def backward_fn(g: np.ndarray) -> None:
        if a.requires_grad:
            _accumulate(a, g)
        if b.requires_grad:
            _accumulate(b, g)

    return _result(out, (a, b), backward_fn, "add")


def multiply(a: Tensor, b: Tensor) -> Tensor:
    if a.shape != b.shape:
        raise ShapeError(f"multiply needs equal shapes, got {a.shape} and {b.shape}")
    out = a.data * b.data

    def backward_fn(g: np.ndarray) -> None:
        if a.requires_grad:
            _accumulate(a, g * b.data)
        if b.requires_grad:
            _accumulate(b, g * a.data)

    return _result(out, (a, b), backward_fn, "multiply")


def scale(x: Tensor, factor: float) -> Tensor:
    out = x.data * x.data.dtype.type(factor)

    def backward_fn(g: np.ndarray) -> None:
        if x.requires_grad:
            _accumulate(x, g * x.data.dtype.type(factor))

    return _result(out, (x,), backward_fn, "scale")


def leaky_relu(x: Tensor, slope: float = 0.2) -> Tensor:
    if not (0.0 < slope <= 1.0):
        raise ValueError(f"leaky_relu slope must lie in (0, 1], got {slope}")
    mask = x.data >= 0
    out = np.where(mask, x.data, x.data * x.data.dtype.type(slope))

    def backward_fn(g: np.ndarray) -> None:
        if x.requires_grad:
            _accumulate(x, np.where(mask, g, g * x.data.dtype.type(slope)))

    return _result(out, (x,), backward_fn, "leaky_relu")


def relu(x: Tensor) -> Tensor:
    mask = x.data > 0
    out = np.where(mask, x.data, x.data.dtype.type(0))

    def backward_fn(g: np.ndarray) -> None:
        if x.requires_grad:
            _accumulate(x, np.where(mask, g, x.data.dtype.type(0)))

    return _result(out, (x,), backward_fn, "relu")


def tanh(x: Tensor) -> Tensor:
    out = np.tanh(x.data)

    def backward_fn(g: np.ndarray) -> None:
        if x.requires_grad:
            _accumulate(x, g * (1.0 - out * out))

    return _result(out, (x,), backward_fn, "tanh")


def sigmoid(x: Tensor) -> Tensor:
    # exp of a non-positive argument on both branches, so no overflow.
    out = np.where(
        x.data >= 0,
        1.0 / (1.0 + np.exp(-np.abs(x.data))),
        np.exp(-np.abs(x.data)) / (1.0 + np.exp(-np.abs(x.data))),
    ).astype(x.data.dtype)

    def backward_fn(g: np.ndarray) -> None:
        if x.requires_grad:
            _accumulate(x, g * out * (1.0 - out))

    return _result(out, (x,), backward_fn, "sigmoid")


# ---------------------------------------------------------------------------
# structure


def concat_rows(parts: Iterable[Tensor]) -> Tensor:
    parts = list(parts)
    if not parts:
        raise ShapeError("concat_rows needs at least one tensor")
    width = parts[0].shape[1]
    for p in parts:
        if p.data.ndim != 2 or p.shape[1] != width:
            raise ShapeError(f"concat_rows width mismatch: {[p.shape for p in parts]}")
    out = np.concatenate([p.data for p in parts], axis=0)
    offsets = np.cumsum([0] + [p.shape[0] for p in parts])

    def backward_fn(g: np.ndarray) -> None:
        for p, lo, hi in zip(parts, offsets[:-1], offsets[1:]):
            if p.requires_grad:
                _accumulate(p, g[lo:hi])

    return _result(out, parts, backward_fn, "concat_rows")


def concat_cols(parts: Iterable[Tensor]) -> Tensor:
    parts = list(parts)
    if not parts:
        raise ShapeError("concat_cols needs at least one tensor")
    height = parts[0].shape[0]
    for p in parts:
        if p.data.ndim != 2 or p.shape[0] != height:
            raise ShapeError(f"concat_cols height mismatch: {[p.shape for p in parts]}")
    out = np.concatenate([p.data for p in parts], axis=1)
    offsets = np.cumsum([0] + [p.shape[1] for p in parts])

    def backward_fn(g: np.ndarray) -> None:
        for p, lo, hi in zip(parts, offsets[:-1], offsets[1:]):
            if p.requires_grad:
                _accumulate(p, g[:, lo:hi])

    return _result(out, parts, backward_fn, "concat_cols")


def slice_cols(x: Tensor, start: int, stop: int) -> Tensor:
    if x.data.ndim != 2:
        raise ShapeError(f"slice_cols needs a 2-D tensor, got {x.shape}")
    if not (0 <= start < stop <= x.shape[1]):
        raise ShapeError(f"slice_cols range [{start}:{stop}] invalid for shape {x.shape}")
    out = x.data[:, start:stop].copy()

    def backward_fn(g: np.ndarray) -> None:
        if x.requires_grad:
            full = np.zeros_like(x.data)
            full[:, start:stop] = g
            _accumulate(x, full)

    return _result(out, (x,), backward_fn, "slice_cols")


def mean_rows(x: Tensor) -> Tensor:
    """Mean over the time axis: T x D -> 1 x D."""
    if x.data.ndim != 2:
        raise ShapeError(f"mean_rows needs a 2-D tensor, got {x.shape}")
    n = x.shape[0]
    out = x.data.mean(axis=0, keepdims=True)

    def backward_fn(g: np.ndarray) -> None:
        if x.requires_grad:
            _accumulate(x, np.repeat(g / n, n, axis=0))

    return _result(out, (x,), backward_fn, "mean_rows")


# ---------------------------------------------------------------------------
# normalization and attention plumbing


def softmax_rows(m: Tensor) -> Tensor:
    if m.data.ndim != 2:
        raise ShapeError(f"softmax_rows needs a 2-D tensor, got {m.shape}")
    shifted = m.data - m.data.max(axis=1, keepdims=True)
    e = np.exp(shifted)
    out = e / e.sum(axis=1, keepdims=True)

    def backward_fn(g: np.ndarray) -> None:
        if m.requires_grad:
            dot = (g * out).sum(axis=1, keepdims=True)
            _accumulate(m, out * (g - dot))

    return _result(out, (m,), backward_fn, "softmax_rows")


def layer_norm(x: Tensor, gamma: Tensor, beta: Tensor, eps: float = 1e-5) -> Tensor:
    if x.data.ndim != 2:
        raise ShapeError(f"layer_norm needs a 2-D tensor, got {x.shape}")
    d = x.shape[1]
    if gamma.data.ndim != 1 or gamma.shape[0] != d or beta.data.ndim != 1 or beta.shape[0] != d:
        raise ShapeError(
            f"layer_norm scale/shift must be width-{d} vectors, got {gamma.shape} and {beta.shape}"
        )
    mu = x.data.mean(axis=1, keepdims=True)
    centered = x.data - mu
    var = (centered * centered).mean(axis=1, keepdims=True)
    inv_std = 1.0 / np.sqrt(var + x.data.dtype.type(eps))
    norm = centered * inv_std
    out = norm * gamma.data + beta.data

    def backward_fn(g: np.ndarray) -> None:
        if gamma.requires_grad:
            _accumulate(gamma, (g * norm).sum(axis=0))
        if beta.requires_grad:
            _accumulate(beta, g.sum(axis=0))
        if x.requires_grad:
            gn = g * gamma.data
            term = gn - gn.mean(axis=1, keepdims=True) - norm * (gn * norm).mean(axis=1, keepdims=True)
            _accumulate(x, term * inv_std)

    return _result(out, (x, gamma, beta), backward_fn, "layer_norm")


def dropout(x: Tensor, p: float, rng: np.random.Generator | None, training: bool) -> Tensor:
    """Inverted dropout: scales kept entries by 1/(1-p) at train time.

    Identity when not training or p == 0, so evaluation and gradient checks
    see the deterministic network.
    """
    if not (0.0 <= p < 1.0):
        raise ValueError(f"dropout rate must lie in [0, 1), got {p}")
    if not training or p == 0.0:
        return x
    if rng is None:
        raise ValueError("training-mode dropout needs the run's generator")
    keep = (rng.random(x.shape) >= p).astype(x.data.dtype)
    factor = x.data.dtype.type(1.0 / (1.0 - p))
    out = x.data * keep * factor

    def backward_fn(g: np.ndarray) -> None:
        if x.requires_grad:
            _accumulate(x, g * keep * factor)

    return _result(out, (x,), backward_fn, "dropout")


def cross_entropy(probs: Tensor, label: int) -> Tensor:
    """Negative log likelihood of `label` under a 1 x C probability row.

    When `probs` is the direct output of softmax_rows the loss is computed
    from the pre-softmax scores with log-sum-exp, and the combined gradient
    (probs - onehot) flows straight into those scores; otherwise it falls
    back to -log(probs[label]).
    """
    if probs.data.ndim != 2 or probs.shape[0] != 1:
        raise ShapeError(f"cross_entropy needs a 1 x C probability row, got {probs.shape}")
    n_classes = probs.shape[1]
    if not (0 <= int(label) < n_classes):
        raise ValueError(f"label {label} outside [0, {n_classes})")
    label = int(label)
    if abs(float(probs.data.sum()) - 1.0) > 1e-3:
        raise ValueError(f"probabilities sum to {float(probs.data.sum()):.6f}, not 1")

    if probs.op == "softmax_rows" and probs._parents:
        logits = probs._parents[0]
        z = logits.data
        m = z.max()
        lse = m + np.log(np.exp(z - m).sum())
        out = np.asarray([[lse - z[0, label]]], dtype=z.dtype)

        def backward_fn(g: np.ndarray) -> None:
            if logits.requires_grad:
                delta = probs.data.copy()
                delta[0, label] -= 1.0
                _accumulate(logits, g.item() * delta)

        return _result(out, (logits,), backward_fn, "cross_entropy")

    p = float(probs.data[0, label])
    out = np.asarray([[-np.log(max(p, np.finfo(probs.data.dtype).tiny))]], dtype=probs.data.dtype)

    def backward_fn(g: np.ndarray) -> None:
        if probs.requires_grad:
            full = np.zeros_like(probs.data)
            full[0, label] = -g.item() / max(p, float(np.finfo(probs.data.dtype).tiny))
            _accumulate(probs, full)

    return _result(out, (probs,), backward_fn, "cross_entropy")


# ---------------------------------------------------------------------------
# reverse pass


def _toposort(root: Tensor) -> list[Tensor]:
    order: list[Tensor] = []
    seen: set[int] = set()
    stack: list[tuple[Tensor, bool]] = [(root, False)]
    while stack:
        node, expanded = stack.pop()
        if expanded:
            order.append(node)
            continue
        if id(node) in seen:
            continue
        seen.add(id(node))
        stack.append((node, True))
        for parent in node._parents:
            if id(parent) not in seen:
                stack.append((parent, False))
    return order


def backward(loss: Tensor) -> None:
    """Populate .grad on every requires_grad tensor reachable from `loss`.

    `loss` must hold a single element.  Each node's backward rule runs
    exactly once, in reverse topological order.
    """
    if loss.data.size != 1:
        raise ShapeError(f"backward needs a scalar loss, got shape {loss.shape}")
    if not loss.requires_grad:
        return
    loss.grad = np.ones_like(loss.data)
    # Reverse topological order: every consumer of a node is processed before
    # the node itself, so its .grad is complete when its rule fires, and each
    # rule fires exactly once.  Op-node grads are dropped after propagation;
    # leaves (parameters, inputs) keep theirs.
    for node in reversed(_toposort(loss)):
        g = node.grad
        if node._backward is not None and g is not None:
            node._backward(g)
            node.grad = None


def gradients(loss: Tensor, params: dict[str, Tensor]) -> dict[str, np.ndarray]:
    """Backward pass returning d(loss)/d(param) for every named parameter.

    Parameters that do not participate in the loss get exact zeros.
    """
    for p in params.values():
        p.grad = None
    backward(loss)
    out = {}
    for name, p in params.items():
        out[name] = np.zeros_like(p.data) if p.grad is None else p.grad
        p.grad = None
    return out


# ---------------------------------------------------------------------------
# gradient checking


def numerical_gradient(
    f: Callable[[], float], arr: np.ndarray, eps: float
) -> np.ndarray:
    """Central finite differences of a scalar function w.r.t. `arr` in place."""
    grad = np.zeros_like(arr, dtype=np.float64)
    flat = arr.reshape(-1)
    gflat = grad.reshape(-1)
    for i in range(flat.size):
        orig = flat[i]
        flat[i] = orig + eps
        hi = f()
        flat[i] = orig - eps
        lo = f()
        flat[i] = orig
        gflat[i] = (hi - lo) / (2.0 * eps)
    return grad


def grad_check(
    forward: Callable[[dict[str, Tensor]], Tensor],
    params: dict[str, Tensor],
    eps: float = 1e-4,
    numeric_params: dict[str, Tensor] | None = None,
    max_entries_per_param: int | None = None,
    rng: np.random.Generator | None = None,
) -> float:
    """Max relative error between analytic and central-difference gradients.

    Per entry the error is |analytic - numeric| / max(1e-8, |analytic| +
    |numeric|).  `forward` must be deterministic (dropout off).

    `numeric_params` lets the finite-difference side run on a separate
    (typically float64) copy of the same parameter values, which keeps the
    difference quotient meaningful when the analytic side runs in float32.
    `max_entries_per_param` samples that many entries per parameter instead
    of sweeping all of them (quick smoke checks; None sweeps everything).
    """
    if eps <= 0:
        raise ValueError(f"eps must be positive, got {eps}")
    analytic = gradients(forward(params), params)

    nparams = numeric_params if numeric_params is not None else params

    def loss_value() -> float:
        with no_grad():
            return forward(nparams).item()

    max_err = 0.0
    for name, p in nparams.items():
        a = analytic[name].reshape(-1)
        flat = p.data.reshape(-1)
        if max_entries_per_param is not None and flat.size > max_entries_per_param:
            if rng is None:
                rng = np.random.default_rng(0)
            idx = rng.choice(flat.size, size=max_entries_per_param, replace=False)
        else:
            idx = range(flat.size)
        for i in idx:
            orig = flat[i]
            flat[i] = orig + eps
            hi = loss_value()
            flat[i] = orig - eps
            lo = loss_value()
            flat[i] = orig
            numeric = (hi - lo) / (2.0 * eps)
            err = abs(float(a[i]) - numeric) / max(1e-8, abs(float(a[i])) + abs(numeric))
            if err > max_err:
                max_err = err
    return max_err
