"""Unsupervised pretraining: predict the next two spatial features.

Each training sample is a 100-tick pressure window ending at tick k; the
dynamic feature h_k must predict z_{k+1} and z_{k+2} (0.1 and 0.2 time
units ahead), scored by cosine similarity:

    loss = -mean[ cos(z_{k+1}, zhat_{k+1}) + cos(z_{k+2}, zhat_{k+2}) ]

Batches are blocks of consecutive window ends, so the overlapping windows
share one encoder pass over the block's unique pressure rows.
"""

from dataclasses import dataclass

import numpy as np

from ..env.dataset import Dataset
from ..errors import DataError, TrainingError
from ..nn import Adam, ParameterSet, Rng, add, cosine_similarity, neg, tensor, tmean
from .model import (
    WINDOW,
    encode_batch,
    init_perception,
    predict_future,
    sliding_windows,
    dynamic_from_z,
    take,
)


@dataclass
class PretrainConfig:
    epochs: int = 20
    batch: int = 64
    lr: float = 1e-3
    seed: int = 0


def cpc_loss(params: ParameterSet, rows: tensor, offsets, tgt1_idx, tgt2_idx):
    """Loss for one block: rows (M, 200); window starts and target indices
    are local row indices."""
    z_seq = encode_batch(params, rows)
    zw = sliding_windows(z_seq, offsets, WINDOW)
    hs = dynamic_from_z(params, zw)
    h = take(hs, -1)
    zhat1, zhat2 = predict_future(params, h)
    z1 = take(z_seq, tgt1_idx)
    z2 = take(z_seq, tgt2_idx)
    c = add(cosine_similarity(z1, zhat1, axis=1),
            cosine_similarity(z2, zhat2, axis=1))
    return neg(tmean(c))


def pretrain(dataset: Dataset, config: PretrainConfig):
    """Returns (params, curve) where curve rows are (epoch, mean_loss)."""
    press = np.ascontiguousarray(dataset.pressures, dtype=np.float32)
    n = press.shape[0]
    if n < WINDOW + 2:
        raise DataError(
            f"dataset has {n} ticks; need at least {WINDOW + 2}")
    rng_init, rng_blocks = Rng(config.seed).split(2)
    params = init_perception(rng_init, with_predictor=True)
    opt = Adam(params, lr=config.lr)

    b = config.batch
    # window ends k with targets k+1, k+2 available
    lo, hi = WINDOW - 1, n - 3          # inclusive range of block starts
    n_windows = hi - lo + 1
    if n_windows < b:
        raise DataError("dataset too short for one batch of windows")
    steps = max(1, n_windows // b)
    curve = []
    for epoch in range(config.epochs):
        starts = rng_blocks.integers(lo, hi - b + 2, size=steps)
        losses = []
        for s in starts:
            ends = np.arange(s, s + b)              # window end indices
            base = s - (WINDOW - 1)                 # first pressure row used
            rows = tensor(press[base:s + b + 2])
            offsets = ends - (WINDOW - 1) - base
            loss = cpc_loss(params, rows, offsets,
                            ends + 1 - base, ends + 2 - base)
            val = float(loss.data)
            if not np.isfinite(val):
                raise TrainingError(f"non-finite pretraining loss at "
                                    f"epoch {epoch}")
            loss.backward()
            opt.step()
            losses.append(val)
        curve.append((epoch, float(np.mean(losses))))
    return params, curve
