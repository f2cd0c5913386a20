"""The perception network: circular-conv spatial encoder (200 pressures ->
50-dim z), GRU temporal compressor (100 x 50 -> 64-dim h), the two-layer
future-feature predictor used in pretraining, and the obstacle-position
head.

Encoder stack: kernels [10, 8, 7, 5, 3], strides [2, 2, 1, 1, 1], channels
1 -> 16 -> 32 -> 32 -> 16 -> 1, ReLU between layers (none after the last),
so one 200-sensor snapshot maps to exactly 50 features.
"""

import numpy as np

from ..errors import ShapeError
from ..nn import (
    ParameterSet,
    Rng,
    Tensor,
    add,
    conv1d_circular,
    gru_sequence,
    he_uniform,
    linear,
    relu,
    reshape,
    sliding_windows,
    take,
    tensor,
    transpose,
    xavier_uniform,
)

N_SENSORS = 200
Z_DIM = 50
H_DIM = 64
WINDOW = 100
ENCODER_KERNELS = (10, 8, 7, 5, 3)
ENCODER_STRIDES = (2, 2, 1, 1, 1)
ENCODER_CHANNELS = (1, 16, 32, 32, 16, 1)

TRUNK_PREFIXES = ("enc.", "gru.")


def init_encoder(params: ParameterSet, rng: Rng, dtype=None):
    for i, (k, cin, cout) in enumerate(zip(ENCODER_KERNELS,
                                           ENCODER_CHANNELS[:-1],
                                           ENCODER_CHANNELS[1:])):
        params.add(f"enc.w{i}", he_uniform(rng, (cout, cin, k), cin * k),
                   dtype=dtype)
        params.add(f"enc.b{i}", np.zeros((cout, 1)), dtype=dtype)


def init_gru(params: ParameterSet, rng: Rng, in_dim=Z_DIM, hid=H_DIM,
             dtype=None):
    params.add("gru.w_in",
               xavier_uniform(rng, (in_dim, 3 * hid), in_dim, hid),
               dtype=dtype)
    params.add("gru.w_rec_zr",
               xavier_uniform(rng, (hid, 2 * hid), hid, hid), dtype=dtype)
    params.add("gru.w_rec_h",
               xavier_uniform(rng, (hid, hid), hid, hid), dtype=dtype)
    params.add("gru.bias", np.zeros(3 * hid), dtype=dtype)


def init_predictor(params: ParameterSet, rng: Rng, hid=H_DIM, z=Z_DIM,
                   dtype=None):
    params.add("pred.w0", he_uniform(rng, (hid, hid), hid), dtype=dtype)
    params.add("pred.b0", np.zeros(hid), dtype=dtype)
    params.add("pred.w1", xavier_uniform(rng, (hid, 2 * z), hid, 2 * z),
               dtype=dtype)
    params.add("pred.b1", np.zeros(2 * z), dtype=dtype)


def init_obstacle_head(params: ParameterSet, rng: Rng, hid=H_DIM,
                       dtype=None):
    params.add("head.w0", he_uniform(rng, (hid, 32), hid), dtype=dtype)
    params.add("head.b0", np.zeros(32), dtype=dtype)
    params.add("head.w1", xavier_uniform(rng, (32, 1), 32, 1), dtype=dtype)
    params.add("head.b1", np.zeros(1), dtype=dtype)


def init_perception(rng: Rng, with_predictor=True, with_head=False,
                    dtype=None) -> ParameterSet:
    params = ParameterSet()
    init_encoder(params, rng, dtype=dtype)
    init_gru(params, rng, dtype=dtype)
    if with_predictor:
        init_predictor(params, rng, dtype=dtype)
    if with_head:
        init_obstacle_head(params, rng, dtype=dtype)
    return params


def encode_batch(params: ParameterSet, p: Tensor) -> Tensor:
    """(B, 200) pressure rows -> (B, 50) spatial features."""
    if p.data.shape[-1] != N_SENSORS:
        raise ShapeError(f"expected {N_SENSORS} sensors, got "
                         f"{p.data.shape[-1]}")
    B = p.data.shape[0]
    x = reshape(p, (B, 1, N_SENSORS))
    n_layers = len(ENCODER_KERNELS)
    for i, s in enumerate(ENCODER_STRIDES):
        x = add(conv1d_circular(x, params[f"enc.w{i}"], s),
                params[f"enc.b{i}"])
        if i < n_layers - 1:
            x = relu(x)
    return reshape(x, (B, Z_DIM))


def encode_spatial(params: ParameterSet, p) -> np.ndarray:
    """One 200-sensor snapshot -> length-50 spatial feature (no grad)."""
    arr = np.asarray(p)
    if arr.shape != (N_SENSORS,):
        raise ShapeError(f"expected ({N_SENSORS},), got {arr.shape}")
    z = encode_batch(params, tensor(arr[None, :],
                                    dtype=params["enc.w0"].data.dtype))
    return z.data[0]


def dynamic_from_z(params: ParameterSet, z_seq: Tensor) -> Tensor:
    """(T, B, 50) z sequence -> all GRU states (T, B, 64), zero init."""
    return gru_sequence(z_seq, params["gru.w_in"], params["gru.w_rec_zr"],
                        params["gru.w_rec_h"], params["gru.bias"])


def encode_dynamic(params: ParameterSet, z_window) -> np.ndarray:
    """(100, 50) z window -> length-64 dynamic feature (no grad)."""
    arr = np.asarray(z_window)
    if arr.ndim != 2 or arr.shape[0] == 0 or arr.shape[1] != Z_DIM:
        raise ShapeError(f"expected (w, {Z_DIM}) window, got {arr.shape}")
    z = tensor(arr[:, None, :], dtype=params["gru.w_in"].data.dtype)
    hs = dynamic_from_z(params, z)
    return hs.data[-1, 0]


def windows_to_h(params: ParameterSet, rows: Tensor, offsets) -> Tensor:
    """Encode unique pressure rows once, gather overlapping windows, run the
    GRU; rows (M, 200), offsets (B,) local window starts -> h (B, 64)."""
    z_seq = encode_batch(params, rows)
    zw = sliding_windows(z_seq, offsets, WINDOW)      # (100, B, 50)
    hs = dynamic_from_z(params, zw)
    return take(hs, -1)

def batch_windows_to_h(params: ParameterSet, windows: Tensor) -> Tensor:
    """Independent stacked windows (K, 100, 200) -> h (K, 64)."""
    K = windows.data.shape[0]
    rows = reshape(windows, (K * WINDOW, N_SENSORS))
    z = encode_batch(params, rows)                    # (K*100, 50)
    z3 = reshape(z, (K, WINDOW, Z_DIM))
    zt = transpose(z3, (1, 0, 2))                     # (100, K, 50)
    hs = dynamic_from_z(params, zt)
    return take(hs, -1)


def predict_future(params: ParameterSet, h: Tensor):
    """h (B, 64) -> predicted next-two spatial features, (B, 50) each."""
    y = relu(linear(h, params["pred.w0"], params["pred.b0"]))
    y = linear(y, params["pred.w1"], params["pred.b1"])
    return take(y, (slice(None), slice(0, Z_DIM))), \
        take(y, (slice(None), slice(Z_DIM, 2 * Z_DIM)))


def obstacle_from_h(params: ParameterSet, h: Tensor) -> Tensor:
    """h (B, 64) -> predicted obstacle offset (B,)."""
    y = relu(linear(h, params["head.w0"], params["head.b0"]))
    y = linear(y, params["head.w1"], params["head.b1"])
    return reshape(y, (y.data.shape[0],))


def trunk_values(params: ParameterSet) -> dict:
    """Encoder+GRU weights (the part shared across tasks)."""
    return {k: v.data.copy() for k, v in params.items()
            if k.startswith(TRUNK_PREFIXES)}


def load_trunk(params: ParameterSet, values: dict):
    for k, p in params.items():
        if k.startswith(TRUNK_PREFIXES):
            if k not in values:
                raise ShapeError(f"trunk checkpoint missing {k!r}")
            p.data = np.asarray(values[k], dtype=p.data.dtype).copy()
