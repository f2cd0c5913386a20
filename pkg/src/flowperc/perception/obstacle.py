"""Supervised obstacle-position inference.

A window covering [t-10, t] predicts the obstacle's offset at t-10 (the
disturbance needs roughly that long to reach the agent), so the label for
the window ending at tick k is y_obstacle[k - 100]. Loss is mean squared
error of the normalized position y/D. The whole network (encoder + GRU +
head) trains; a pretrained run initializes the trunk from the pretraining
checkpoint, the baseline starts from random weights.
"""

from dataclasses import dataclass

import numpy as np

from ..env.dataset import Dataset
from ..errors import DataError
from ..nn import Adam, ParameterSet, Rng, no_grad, sub, square, tensor, tmean
from .model import (
    WINDOW,
    encode_batch,
    init_perception,
    load_trunk,
    obstacle_from_h,
    sliding_windows,
    dynamic_from_z,
    take,
)

LAG_TICKS = 100


@dataclass
class ObstacleConfig:
    epochs: int = 12
    batch: int = 64
    lr: float = 1e-3
    seed: int = 0
    val_fraction: float = 0.1
    eval_batch: int = 256


def _valid_ends(ds: Dataset):
    # window ends k need a full window (k >= 99) and a label (k >= 100)
    n = len(ds)
    if n <= LAG_TICKS + 1:
        raise DataError("dataset too short for lagged supervision")
    return np.arange(LAG_TICKS, n)


def _forward_block(params, press, ends):
    base = int(ends[0]) - (WINDOW - 1)
    rows = tensor(press[base:int(ends[-1]) + 1])
    offsets = ends - (WINDOW - 1) - base
    z_seq = encode_batch(params, rows)
    zw = sliding_windows(z_seq, offsets, WINDOW)
    hs = dynamic_from_z(params, zw)
    return obstacle_from_h(params, take(hs, -1))


def predict_positions(params: ParameterSet, ds: Dataset,
                      batch: int = 256):
    """(t, y_true, y_pred) across all valid windows of a dataset."""
    press = np.ascontiguousarray(ds.pressures, dtype=np.float32)
    ends = _valid_ends(ds)
    labels = ds.y_obstacle[ends - LAG_TICKS]
    preds = np.empty(len(ends), dtype=np.float32)
    with no_grad():
        for i in range(0, len(ends), batch):
            blk = ends[i:i + batch]
            preds[i:i + len(blk)] = _forward_block(params, press, blk).data
    return ds.t[ends], labels.astype(np.float64), preds.astype(np.float64)


def eval_mse(params: ParameterSet, ds: Dataset, batch: int = 256) -> float:
    _, y, yhat = predict_positions(params, ds, batch)
    return float(np.mean((y - yhat) ** 2))


def train_obstacle(train_ds: Dataset, test_sets: dict[str, Dataset],
                   config: ObstacleConfig, pretrained_trunk: dict | None = None):
    """Train the obstacle head (trunk fine-tuned end to end).

    Returns a dict with the best parameters (selected on the four-test
    average error, as reported), per-epoch error curves, and final stats.
    """
    press = np.ascontiguousarray(train_ds.pressures, dtype=np.float32)
    labels_all = train_ds.y_obstacle.astype(np.float32)
    ends = _valid_ends(train_ds)
    n_train = int(len(ends) * (1.0 - config.val_fraction))
    train_ends, val_ends = ends[:n_train], ends[n_train:]

    rng_init, rng_blocks = Rng(config.seed).split(2)
    params = init_perception(rng_init, with_predictor=False, with_head=True)
    if pretrained_trunk is not None:
        load_trunk(params, pretrained_trunk)
    opt = Adam(params, lr=config.lr)

    b = config.batch
    steps = max(1, len(train_ends) // b)
    lo, hi = int(train_ends[0]), int(train_ends[-1])
    curve = []
    best = {"avg": np.inf, "epoch": -1, "values": None, "per_test": None}
    for epoch in range(config.epochs):
        starts = rng_blocks.integers(lo, hi - b + 2, size=steps)
        tr_losses = []
        for s in starts:
            blk = np.arange(s, s + b)
            pred = _forward_block(params, press, blk)
            lbl = tensor(labels_all[blk - LAG_TICKS])
            loss = tmean(square(sub(pred, lbl)))
            tr_losses.append(float(loss.data))
            loss.backward()
            opt.step()
        val_mse = _block_eval(params, press, labels_all, val_ends,
                              config.eval_batch)
        per_test = {name: eval_mse(params, ds, config.eval_batch)
                    for name, ds in test_sets.items()}
        avg = float(np.mean(list(per_test.values())))
        row = {"epoch": epoch, "train_mse": float(np.mean(tr_losses)),
               "val_mse": val_mse, "test_avg": avg, **{
                   f"test_{k}": v for k, v in per_test.items()}}
        curve.append(row)
        if avg < best["avg"]:
            best = {"avg": avg, "epoch": epoch,
                    "values": params.copy_values(), "per_test": per_test}
    return {"params": params, "best": best, "curve": curve}


def _block_eval(params, press, labels_all, ends, batch):
    se = 0.0
    cnt = 0
    with no_grad():
        for i in range(0, len(ends), batch):
            blk = ends[i:i + batch]
            pred = _forward_block(params, press, blk).data
            lbl = labels_all[blk - LAG_TICKS]
            se += float(((pred - lbl) ** 2).sum())
            cnt += len(blk)
    return se / max(cnt, 1)
