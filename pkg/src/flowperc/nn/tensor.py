"""Minimal reverse-mode autodiff over numpy arrays.

Float32 by default (set_default_dtype switches; gradient checks run the same
graphs in float64). The graph is recorded eagerly; Tensor.backward() runs a
single reverse pass that accumulates each node's gradient exactly once.
"""

import contextlib

import numpy as np

from ..errors import NumericalDomainError, ProtocolError, ShapeError

_default_dtype = np.float32
_grad_enabled = True


def set_default_dtype(dt):
    global _default_dtype
    _default_dtype = np.dtype(dt).type


def default_dtype():
    return _default_dtype


@contextlib.contextmanager
def no_grad():
    global _grad_enabled
    prev = _grad_enabled
    _grad_enabled = False
    try:
        yield
    finally:
        _grad_enabled = prev


class Tensor:
    __slots__ = ("data", "grad", "requires_grad", "_parents", "_backward")

    def __init__(self, data, requires_grad: bool = False):
        self.data = np.asarray(data)
        self.grad = None
        self.requires_grad = requires_grad
        self._parents = ()
        self._backward = None

    @property
    def shape(self):
        return self.data.shape

    @property
    def dtype(self):
        return self.data.dtype

    def __repr__(self):
        return f"Tensor(shape={self.data.shape}, dtype={self.data.dtype})"

    def detach(self):
        return Tensor(self.data, requires_grad=False)

    def item(self):
        return float(self.data)

    def zero_grad(self):
        self.grad = None

    def backward(self):
        if self.data.size != 1:
            raise ProtocolError("backward() requires a scalar loss")
        topo = []
        visited = set()
        stack = [(self, False)]
        while stack:
            node, done = stack.pop()
            if done:
                topo.append(node)
                continue
            if id(node) in visited:
                continue
            visited.add(id(node))
            stack.append((node, True))
            for p in node._parents:
                if p.requires_grad:
                    stack.append((p, False))
        for node in topo:
            node.grad = None
        self.grad = np.ones_like(self.data)
        for node in reversed(topo):
            if node._backward is not None:
                node._backward()

    # operator sugar
    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return sub(self, other)

    def __mul__(self, other):
        return mul(self, other)

    def __neg__(self):
        return neg(self)

    def __matmul__(self, other):
        return matmul(self, other)

    def __getitem__(self, idx):
        return take(self, idx)

    def reshape(self, *shape):
        return reshape(self, shape)

    def sum(self, axis=None):
        return tsum(self, axis)

    def mean(self, axis=None):
        return tmean(self, axis)


def tensor(data, dtype=None, requires_grad: bool = False) -> Tensor:
    dt = dtype or _default_dtype
    return Tensor(np.asarray(data, dtype=dt), requires_grad=requires_grad)


def _as_tensor(x, like: Tensor) -> Tensor:
    if isinstance(x, Tensor):
        return x
    return Tensor(np.asarray(x, dtype=like.data.dtype))


def _op(data, parents, bw) -> Tensor:
    req = _grad_enabled and any(p.requires_grad for p in parents)
    out = Tensor(data, requires_grad=req)
    if req:
        out._parents = tuple(parents)
        out._backward = bw
    return out


def _accum(t: Tensor, g):
    if not t.requires_grad:
        return
    if t.grad is None:
        t.grad = np.array(g, dtype=t.data.dtype, copy=True)
    else:
        t.grad += g


def _unbroadcast(g, shape):
    extra = g.ndim - len(shape)
    if extra > 0:
        g = g.sum(axis=tuple(range(extra)))
    axes = tuple(i for i, s in enumerate(shape) if s == 1 and g.shape[i] != 1)
    if axes:
        g = g.sum(axis=axes, keepdims=True)
    return g


def _check_dtypes(a: Tensor, b: Tensor):
    if a.data.dtype != b.data.dtype:
        raise ShapeError(
            f"dtype mismatch: {a.data.dtype} vs {b.data.dtype}"
        )


# -- arithmetic --------------------------------------------------------------

def add(a, b):
    b = _as_tensor(b, a)
    _check_dtypes(a, b)
    out_data = a.data + b.data

    def bw():
        g = out.grad
        _accum(a, _unbroadcast(g, a.data.shape))
        _accum(b, _unbroadcast(g, b.data.shape))

    out = _op(out_data, (a, b), bw)
    return out


def sub(a, b):
    b = _as_tensor(b, a)
    _check_dtypes(a, b)
    out_data = a.data - b.data

    def bw():
        g = out.grad
        _accum(a, _unbroadcast(g, a.data.shape))
        _accum(b, _unbroadcast(-g, b.data.shape))

    out = _op(out_data, (a, b), bw)
    return out


def mul(a, b):
    b = _as_tensor(b, a)
    _check_dtypes(a, b)
    out_data = a.data * b.data

    def bw():
        g = out.grad
        _accum(a, _unbroadcast(g * b.data, a.data.shape))
        _accum(b, _unbroadcast(g * a.data, b.data.shape))

    out = _op(out_data, (a, b), bw)
    return out


def neg(a):
    def bw():
        _accum(a, -out.grad)

    out = _op(-a.data, (a,), bw)
    return out


def scale(a, c: float):
    c = float(c)

    def bw():
        _accum(a, out.grad * c)

    out = _op(a.data * c, (a,), bw)
    return out


def matmul(a, b):
    _check_dtypes(a, b)
    out_data = a.data @ b.data

    def bw():
        g = out.grad
        _accum(a, g @ b.data.T)
        _accum(b, a.data.T @ g)

    out = _op(out_data, (a, b), bw)
    return out


def square(a):
    def bw():
        _accum(a, out.grad * (2.0 * a.data))

    out = _op(a.data * a.data, (a,), bw)
    return out


def sqrt(a):
    root = np.sqrt(a.data)

    def bw():
        _accum(a, out.grad * (0.5 / root))

    out = _op(root, (a,), bw)
    return out


def exp(a):
    e = np.exp(a.data)

    def bw():
        _accum(a, out.grad * e)

    out = _op(e, (a,), bw)
    return out


def log(a):
    if np.any(a.data <= 0):
        raise NumericalDomainError("log of non-positive value")

    def bw():
        _accum(a, out.grad / a.data)

    out = _op(np.log(a.data), (a,), bw)
    return out


def reciprocal(a):
    r = 1.0 / a.data

    def bw():
        _accum(a, -out.grad * r * r)

    out = _op(r, (a,), bw)
    return out


# -- activations -------------------------------------------------------------

def relu(a):
    mask = a.data > 0

    def bw():
        _accum(a, out.grad * mask)

    out = _op(np.where(mask, a.data, a.data.dtype.type(0)), (a,), bw)
    return out


def tanh(a):
    th = np.tanh(a.data)

    def bw():
        _accum(a, out.grad * (1.0 - th * th))

    out = _op(th, (a,), bw)
    return out


def sigmoid(a):
    sg = 1.0 / (1.0 + np.exp(-a.data))

    def bw():
        _accum(a, out.grad * sg * (1.0 - sg))

    out = _op(sg, (a,), bw)
    return out


# -- reductions / shape ops ---------------------------------------------------

def tsum(a, axis=None):
    out_data = a.data.sum(axis=axis)

    def bw():
        g = out.grad
        if axis is not None:
            g = np.expand_dims(g, axis)
        _accum(a, np.broadcast_to(g, a.data.shape))

    out = _op(out_data, (a,), bw)
    return out


def tmean(a, axis=None):
    n = a.data.size if axis is None else a.data.shape[axis]
    out_data = a.data.mean(axis=axis)

    def bw():
        g = out.grad
        if axis is not None:
            g = np.expand_dims(g, axis)
        _accum(a, np.broadcast_to(g, a.data.shape) / n)

    out = _op(out_data, (a,), bw)
    return out


def reshape(a, shape):
    def bw():
        _accum(a, out.grad.reshape(a.data.shape))

    out = _op(a.data.reshape(shape), (a,), bw)
    return out


def transpose(a, axes):
    inv = np.argsort(axes)

    def bw():
        _accum(a, out.grad.transpose(inv))

    out = _op(a.data.transpose(axes), (a,), bw)
    return out


def take(a, idx):
    """Basic/fancy indexing with scatter-add backward."""
    out_data = a.data[idx]

    def bw():
        g = np.zeros_like(a.data)
        np.add.at(g, idx, out.grad)
        _accum(a, g)

    out = _op(out_data, (a,), bw)
    return out


def concat(tensors, axis=0):
    datas = [t.data for t in tensors]
    out_data = np.concatenate(datas, axis=axis)
    sizes = [d.shape[axis] for d in datas]
    offs = np.cumsum([0] + sizes)

    def bw():
        g = out.grad
        for t, lo, hi in zip(tensors, offs[:-1], offs[1:]):
            sl = [slice(None)] * g.ndim
            sl[axis] = slice(lo, hi)
            _accum(t, g[tuple(sl)])

    out = _op(out_data, tuple(tensors), bw)
    return out


def minimum(a, b):
    _check_dtypes(a, b)
    take_a = a.data <= b.data

    def bw():
        g = out.grad
        _accum(a, np.where(take_a, g, 0.0))
        _accum(b, np.where(take_a, 0.0, g))

    out = _op(np.minimum(a.data, b.data), (a, b), bw)
    return out


def clamp(a, lo: float, hi: float):
    inside = (a.data >= lo) & (a.data <= hi)

    def bw():
        _accum(a, out.grad * inside)

    out = _op(np.clip(a.data, lo, hi), (a,), bw)
    return out


# -- composite helpers ---------------------------------------------------------

def cosine_similarity(a, b, axis=-1):
    """Cosine of the angle between a and b along `axis` (batched ok)."""
    _check_dtypes(a, b)
    na = np.linalg.norm(a.data, axis=axis)
    nb = np.linalg.norm(b.data, axis=axis)
    if np.any(na < 1e-12) or np.any(nb < 1e-12):
        raise NumericalDomainError("cosine_similarity of zero-norm vector")
    dot = tsum(mul(a, b), axis=axis)
    denom = mul(sqrt(tsum(square(a), axis=axis)),
                sqrt(tsum(square(b), axis=axis)))
    return mul(dot, reciprocal(denom))


def grad(loss: Tensor, params) -> dict:
    """Backward from `loss`; returns {name: gradient} for a ParameterSet."""
    loss.backward()
    return {name: p.grad for name, p in params.items()}
