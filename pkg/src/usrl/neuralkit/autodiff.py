"""Minimal reverse-mode automatic differentiation over float64 numpy arrays.

Every op checks its output for NaN/Inf (toggle with `set_finite_checks`).
The tape is rebuilt per forward pass; `backward` walks it in reverse
topological order.
"""

import numpy as np

_CHECK_FINITE = True


def set_finite_checks(enabled):
    global _CHECK_FINITE
    _CHECK_FINITE = bool(enabled)


class NonFiniteError(FloatingPointError):
    """Raised when an op produces NaN or Inf."""


def _as_array(x):
    return np.asarray(x, dtype=np.float64)


def _unbroadcast(grad, shape):
    """Sum `grad` down to `shape` (inverse of numpy broadcasting)."""
    while grad.ndim > len(shape):
        grad = grad.sum(axis=0)
    for axis, dim in enumerate(shape):
        if dim == 1 and grad.shape[axis] != 1:
            grad = grad.sum(axis=axis, keepdims=True)
    return grad


class Tensor:
    """Node in the autodiff graph wrapping a float64 ndarray."""

    __slots__ = ("data", "grad", "parents", "_vjp", "requires_grad")

    def __init__(self, data, parents=(), vjp=None, requires_grad=False):
        self.data = _as_array(data)
        if _CHECK_FINITE and not np.all(np.isfinite(self.data)):
            raise NonFiniteError("non-finite values in tensor")
        self.grad = None
        self.parents = parents
        self._vjp = vjp
        self.requires_grad = requires_grad or any(p.requires_grad for p in parents)

    @property
    def shape(self):
        return self.data.shape

    def __repr__(self):
        return "Tensor(shape=%s, grad=%s)" % (self.data.shape, self.requires_grad)

    # ---- graph construction -------------------------------------------------

    def __add__(self, other):
        other = _lift(other)
        out = Tensor(self.data + other.data, (self, other),
                     lambda g: (_unbroadcast(g, self.shape),
                                _unbroadcast(g, other.shape)))
        return out

    __radd__ = __add__

    def __neg__(self):
        return Tensor(-self.data, (self,), lambda g: (-g,))

    def __sub__(self, other):
        return self + (-_lift(other))

    def __rsub__(self, other):
        return _lift(other) + (-self)

    def __mul__(self, other):
        other = _lift(other)
        out = Tensor(self.data * other.data, (self, other),
                     lambda g: (_unbroadcast(g * other.data, self.shape),
                                _unbroadcast(g * self.data, other.shape)))
        return out

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _lift(other)
        out = Tensor(self.data / other.data, (self, other),
                     lambda g: (_unbroadcast(g / other.data, self.shape),
                                _unbroadcast(-g * self.data / other.data ** 2,
                                             other.shape)))
        return out

    def __matmul__(self, other):
        other = _lift(other)
        a, b = self.data, other.data
        if a.ndim == 1 and b.ndim == 1:
            vjp = lambda g: (g * b, g * a)
        elif a.ndim == 2 and b.ndim == 1:
            vjp = lambda g: (np.outer(g, b), a.T @ g)
        elif a.ndim == 1 and b.ndim == 2:
            vjp = lambda g: (b @ g, np.outer(a, g))
        else:
            vjp = lambda g: (g @ b.T, a.T @ g)
        return Tensor(a @ b, (self, other), vjp)

    def sum(self, axis=None):
        data = self.data.sum(axis=axis)
        shape = self.shape

        def vjp(g):
            if axis is None:
                return (np.full(shape, g),)
            return (np.broadcast_to(np.expand_dims(g, axis), shape).copy(),)

        return Tensor(data, (self,), vjp)

    def mean(self, axis=None):
        n = self.data.size if axis is None else self.shape[axis]
        return self.sum(axis=axis) / float(n)

    def dot(self, other):
        return self @ other

    def __getitem__(self, key):
        shape = self.shape

        def vjp(g):
            full = np.zeros(shape)
            np.add.at(full, key, g)
            return (full,)

        return Tensor(self.data[key], (self,), vjp)

    # ---- backward -----------------------------------------------------------

    def backward(self, grad=None):
        if grad is None:
            if self.data.ndim != 0:
                raise ValueError("backward() without grad needs a scalar output")
            grad = np.array(1.0)
        order = []
        seen = set()
        stack_ = [(self, False)]
        while stack_:
            node, expanded = stack_.pop()
            if expanded:
                order.append(node)
                continue
            if id(node) in seen or not node.requires_grad:
                continue
            seen.add(id(node))
            stack_.append((node, True))
            for p in node.parents:
                stack_.append((p, False))
        grads = {id(self): _as_array(grad)}
        for node in reversed(order):
            g = grads.pop(id(node), None)
            if g is None:
                continue
            node.grad = g if node.grad is None else node.grad + g
            if node._vjp is None:
                continue
            for parent, pg in zip(node.parents, node._vjp(g)):
                if not parent.requires_grad:
                    continue
                if id(parent) in grads:
                    grads[id(parent)] = grads[id(parent)] + pg
                else:
                    grads[id(parent)] = pg


def _lift(x):
    return x if isinstance(x, Tensor) else Tensor(x)


def tensor(data, requires_grad=False):
    return Tensor(data, requires_grad=requires_grad)


# ---- elementwise nonlinearities ---------------------------------------------

def tanh(x):
    x = _lift(x)
    y = np.tanh(x.data)
    return Tensor(y, (x,), lambda g: (g * (1.0 - y ** 2),))


def sigmoid(x):
    x = _lift(x)
    y = 1.0 / (1.0 + np.exp(-x.data))
    return Tensor(y, (x,), lambda g: (g * y * (1.0 - y),))


def relu(x):
    x = _lift(x)
    mask = x.data > 0
    return Tensor(x.data * mask, (x,), lambda g: (g * mask,))


def exp(x):
    x = _lift(x)
    y = np.exp(x.data)
    return Tensor(y, (x,), lambda g: (g * y,))


def log(x):
    x = _lift(x)
    return Tensor(np.log(x.data), (x,), lambda g: (g / x.data,))


def softmax(x, axis=-1):
    """Row-stable softmax with an exact vector-Jacobian product."""
    x = _lift(x)
    shifted = x.data - x.data.max(axis=axis, keepdims=True)
    e = np.exp(shifted)
    y = e / e.sum(axis=axis, keepdims=True)

    def vjp(g):
        dot = (g * y).sum(axis=axis, keepdims=True)
        return (y * (g - dot),)

    return Tensor(y, (x,), vjp)


# ---- shape ops --------------------------------------------------------------

def concat(tensors, axis=0):
    tensors = [_lift(t) for t in tensors]
    sizes = [t.shape[axis] if t.data.ndim else 1 for t in tensors]
    splits = np.cumsum(sizes)[:-1]

    def vjp(g):
        return tuple(np.split(g, splits, axis=axis))

    return Tensor(np.concatenate([t.data for t in tensors], axis=axis),
                  tuple(tensors), vjp)


def stack(tensors, axis=0):
    tensors = [_lift(t) for t in tensors]

    def vjp(g):
        return tuple(np.moveaxis(g, axis, 0))

    return Tensor(np.stack([t.data for t in tensors], axis=axis),
                  tuple(tensors), vjp)


def rows(table, indices):
    """Select rows `indices` from a 2-D parameter (embedding lookup)."""
    table = _lift(table)
    idx = np.asarray(indices, dtype=np.intp)
    shape = table.shape

    def vjp(g):
        full = np.zeros(shape)
        np.add.at(full, idx, g)
        return (full,)

    return Tensor(table.data[idx], (table,), vjp)


# ---- gradient checking ------------------------------------------------------

def check_gradients(fn, params, step=1e-5, tol=1e-4):
    """Compare reverse-mode grads of scalar `fn(params)` with central differences.

    `params` is a list of Tensors with requires_grad=True. Returns the worst
    relative error; raises AssertionError above `tol`.
    """
    for p in params:
        p.grad = None
    out = fn()
    out.backward()
    worst = 0.0
    for p in params:
        analytic = p.grad if p.grad is not None else np.zeros(p.shape)
        flat = p.data.reshape(-1)
        for i in range(flat.size):
            orig = flat[i]
            flat[i] = orig + step
            hi = fn().data
            flat[i] = orig - step
            lo = fn().data
            flat[i] = orig
            numeric = (hi - lo) / (2.0 * step)
            a = analytic.reshape(-1)[i]
            denom = max(abs(a), abs(numeric), 1.0)
            worst = max(worst, abs(a - numeric) / denom)
    if worst > tol:
        raise AssertionError("gradient check failed: rel err %.3g > %.3g"
                             % (worst, tol))
    return worst
