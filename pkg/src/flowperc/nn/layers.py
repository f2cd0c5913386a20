"""Network building blocks: parameter containers, initializers, and the
layer ops the perception/RL networks need (linear, circular conv1d, GRU).

The GRU comes in two equivalent forms: `gru_step` is composed from autodiff
primitives (reference path, one step); `gru_sequence` runs a whole window
through the fused kernels with an analytic BPTT backward (hot path). Both
use the convention h_t = (1 - z_t) * h_{t-1} + z_t * h_candidate.
"""

import numpy as np

from ..errors import ConfigError, ShapeError
from . import kernels as K
from .rng import Rng
from .tensor import (
    Tensor,
    _accum,
    _op,
    add,
    matmul,
    mul,
    sigmoid,
    sub,
    tanh,
    tensor,
)


class ParameterSet(dict):
    """Ordered name -> Tensor map; every entry requires grad."""

    def add(self, name: str, data, dtype=None) -> Tensor:
        if name in self:
            raise ConfigError(f"duplicate parameter name {name!r}")
        t = tensor(data, dtype=dtype, requires_grad=True)
        self[name] = t
        return t

    def count(self) -> int:
        return sum(p.data.size for p in self.values())

    def zero_grad(self):
        for p in self.values():
            p.grad = None

    def copy_values(self) -> dict:
        return {k: p.data.copy() for k, p in self.items()}

    def load_values(self, values: dict, prefix: str = "", strict: bool = True):
        for k, p in self.items():
            src = prefix + k
            if src in values:
                arr = np.asarray(values[src], dtype=p.data.dtype)
                if arr.shape != p.data.shape:
                    raise ShapeError(
                        f"checkpoint value {src!r} has shape {arr.shape}, "
                        f"expected {p.data.shape}"
                    )
                p.data = arr.copy()
            elif strict:
                raise ShapeError(f"missing value for parameter {src!r}")


def he_uniform(rng: Rng, shape, fan_in: int):
    lim = np.sqrt(6.0 / fan_in)
    return rng.uniform(-lim, lim, size=shape)


def xavier_uniform(rng: Rng, shape, fan_in: int, fan_out: int):
    lim = np.sqrt(6.0 / (fan_in + fan_out))
    return rng.uniform(-lim, lim, size=shape)


def linear(x: Tensor, w: Tensor, b: Tensor) -> Tensor:
    return add(matmul(x, w), b)


def conv1d_circular(x: Tensor, w: Tensor, stride: int) -> Tensor:
    """Circular 1D convolution.

    x: (B, C_in, L), w: (C_out, C_in, k). Total padding k-1 wraps around the
    ring, split (k-1)//2 left / rest right, so the output length is exactly
    L // stride and shifting the input by stride*m shifts the output by m.
    """
    xd, wd = x.data, w.data
    if xd.ndim != 3 or wd.ndim != 3:
        raise ShapeError("conv1d_circular expects (B,C,L) input, (O,C,k) kernel")
    B, cin, L = xd.shape
    cout, cin_w, k = wd.shape
    if cin != cin_w:
        raise ConfigError(f"channel mismatch: input {cin}, kernel {cin_w}")
    if L % stride != 0:
        raise ConfigError(f"length {L} not divisible by stride {stride}")
    if k > L:
        raise ConfigError(f"kernel size {k} exceeds input length {L}")
    lout = L // stride
    pad_left = (k - 1) // 2
    idx = (np.arange(lout)[:, None] * stride - pad_left
           + np.arange(k)[None, :]) % L
    cols = xd[:, :, idx]                                   # (B, Cin, Lout, k)
    mat = np.ascontiguousarray(cols.transpose(0, 2, 1, 3)).reshape(
        B * lout, cin * k)
    wmat = wd.reshape(cout, cin * k)
    out_data = np.ascontiguousarray(
        (mat @ wmat.T).reshape(B, lout, cout).transpose(0, 2, 1))

    def bw():
        g = out.grad                                       # (B, Cout, Lout)
        gmat = np.ascontiguousarray(g.transpose(0, 2, 1)).reshape(
            B * lout, cout)
        if w.requires_grad:
            _accum(w, (gmat.T @ mat).reshape(cout, cin, k))
        if x.requires_grad:
            dcols = (gmat @ wmat).reshape(B, lout, cin, k).transpose(
                0, 2, 1, 3)                                # (B, Cin, Lout, k)
            dx = np.zeros_like(xd)
            for t in range(k):
                dx[:, :, idx[:, t]] += dcols[:, :, :, t]
            _accum(x, dx)

    out = _op(out_data, (x, w), bw)
    return out


def gru_step(x: Tensor, h_prev: Tensor, w_in: Tensor, w_rec_zr: Tensor,
             w_rec_h: Tensor, bias: Tensor) -> Tensor:
    """One GRU step from autodiff primitives. x: (B, I), h_prev: (B, H)."""
    h = w_rec_h.data.shape[0]
    if x.data.shape[-1] != w_in.data.shape[0]:
        raise ShapeError(
            f"gru_step input width {x.data.shape[-1]} != {w_in.data.shape[0]}"
        )
    gx = linear(x, w_in, bias)
    gh = matmul(h_prev, w_rec_zr)
    z = sigmoid(add(gx[:, :h], gh[:, :h]))
    r = sigmoid(add(gx[:, h:2 * h], gh[:, h:]))
    hc = tanh(add(gx[:, 2 * h:], matmul(mul(r, h_prev), w_rec_h)))
    return add(h_prev, mul(z, sub(hc, h_prev)))


def gru_sequence(xs: Tensor, w_in: Tensor, w_rec_zr: Tensor, w_rec_h: Tensor,
                 bias: Tensor, h0: np.ndarray | None = None) -> Tensor:
    """Run a (T, B, I) sequence through the GRU; returns all states (T, B, H).

    Fused kernels with analytic backward; equivalent to looping gru_step
    from a zero (or given constant) initial state.
    """
    T, B, _ = xs.data.shape
    H = w_rec_h.data.shape[0]
    dt = xs.data.dtype
    if h0 is None:
        h0 = np.zeros((B, H), dtype=dt)
    GX = (xs.data.reshape(T * B, -1) @ w_in.data + bias.data).reshape(
        T, B, 3 * H)
    Hs = np.empty((T, B, H), dtype=dt)
    Z = np.empty((T, B, H), dtype=dt)
    R = np.empty((T, B, H), dtype=dt)
    HC = np.empty((T, B, H), dtype=dt)
    K.gru_seq_forward(GX, w_rec_zr.data, w_rec_h.data, h0, Hs, Z, R, HC)

    def bw():
        dH = np.ascontiguousarray(out.grad)
        dGX = np.zeros_like(GX)
        dUzr = np.zeros_like(w_rec_zr.data)
        dUh = np.zeros_like(w_rec_h.data)
        K.gru_seq_backward(GX, w_rec_zr.data, w_rec_h.data, h0, Hs, Z, R,
                           HC, dH, dGX, dUzr, dUh)
        dgx2 = dGX.reshape(T * B, 3 * H)
        if w_in.requires_grad:
            _accum(w_in, xs.data.reshape(T * B, -1).T @ dgx2)
        if bias.requires_grad:
            _accum(bias, dgx2.sum(axis=0))
        _accum(w_rec_zr, dUzr)
        _accum(w_rec_h, dUh)
        if xs.requires_grad:
            _accum(xs, (dgx2 @ w_in.data.T).reshape(T, B, -1))

    out = _op(Hs, (xs, w_in, w_rec_zr, w_rec_h, bias), bw)
    return out


def sliding_windows(seq: Tensor, offsets: np.ndarray, length: int) -> Tensor:
    """Gather overlapping windows from a (N, F) sequence.

    Returns (length, B, F) where out[t, b] = seq[offsets[b] + t]; the
    backward pass scatter-adds, so shared rows accumulate correctly.
    """
    offsets = np.asarray(offsets, dtype=np.int64)
    idx = np.arange(length)[:, None] + offsets[None, :]      # (T, B)
    if idx.min() < 0 or idx.max() >= seq.data.shape[0]:
        raise ShapeError("window range exceeds sequence bounds")
    out_data = seq.data[idx]

    def bw():
        g = np.zeros_like(seq.data)
        np.add.at(g, idx.ravel(),
                  out.grad.reshape(-1, seq.data.shape[1]))
        _accum(seq, g)

    out = _op(out_data, (seq,), bw)
    return out
