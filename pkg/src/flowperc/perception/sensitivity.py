"""Sensor-space sensitivity of the dynamic feature.

For each sensor j: the mean over windows of the L2 norm, taken over all 64
feature components and all 100 window times, of dh/dp_{t,j}; the map is
normalized to sum to 1. High values mark the surface regions the network
actually listens to.
"""

import numpy as np

from ..errors import NumericalDomainError
from ..nn import ParameterSet, Tensor, tensor, tsum, take
from .model import H_DIM, N_SENSORS, WINDOW, batch_windows_to_h


def sensitivity_map(params: ParameterSet, windows: np.ndarray,
                    batch: int = 24) -> np.ndarray:
    """windows: (K, 100, 200) pressure windows, K >= 1; returns (200,)."""
    windows = np.asarray(windows, dtype=np.float32)
    K = windows.shape[0]
    if windows.shape[1:] != (WINDOW, N_SENSORS):
        raise NumericalDomainError(
            f"windows must be (K, {WINDOW}, {N_SENSORS})")
    sq = np.zeros((K, N_SENSORS), dtype=np.float64)
    for i0 in range(0, K, batch):
        blk = windows[i0:i0 + batch]
        inp = tensor(blk, requires_grad=True)
        h = batch_windows_to_h(params, inp)           # (k, 64)
        for c in range(H_DIM):
            comp = tsum(take(h, (slice(None), c)))
            comp.backward()
            g = inp.grad                              # (k, 100, 200)
            sq[i0:i0 + blk.shape[0]] += (
                g.astype(np.float64) ** 2).sum(axis=1)
    per_window = np.sqrt(sq)                          # (K, 200)
    s = per_window.mean(axis=0)
    total = s.sum()
    if not np.isfinite(total) or total <= 0.0:
        raise NumericalDomainError("sensitivity map is zero or non-finite "
                                   "(dead network)")
    return s / total


def entropy(s: np.ndarray) -> float:
    """Shannon entropy of a normalized map (lower = more concentrated)."""
    p = np.asarray(s, dtype=np.float64)
    p = p[p > 0]
    return float(-(p * np.log(p)).sum())
