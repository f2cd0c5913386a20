"""Checkpoint format: magic, JSON manifest (name, shape, byte offset),
then little-endian float32 payloads. Save -> load roundtrips bit-exactly
for float32 parameters (other dtypes are cast to float32 on save).
"""

import json
import struct
from pathlib import Path

import numpy as np

from ..errors import DataError

MAGIC = b"FPCKPT01"


def save_checkpoint(path, values: dict, meta: dict | None = None):
    """values: mapping name -> array-like (Tensor .data or ndarray)."""
    entries = []
    payloads = []
    offset = 0
    for name, arr in values.items():
        a = np.ascontiguousarray(np.asarray(arr), dtype="<f4")
        entries.append({"name": name, "shape": list(a.shape),
                        "offset": offset})
        payloads.append(a.tobytes())
        offset += a.nbytes
    manifest = json.dumps({"entries": entries, "meta": meta or {}},
                          sort_keys=True).encode()
    with open(path, "wb") as f:
        f.write(MAGIC)
        f.write(struct.pack("<Q", len(manifest)))
        f.write(manifest)
        for p in payloads:
            f.write(p)


def load_checkpoint(path):
    """Returns (values: name -> float32 ndarray, meta: dict)."""
    path = Path(path)
    if not path.exists():
        raise DataError(f"checkpoint not found: {path}")
    with open(path, "rb") as f:
        if f.read(8) != MAGIC:
            raise DataError(f"{path} is not a checkpoint file")
        (mlen,) = struct.unpack("<Q", f.read(8))
        manifest = json.loads(f.read(mlen).decode())
        blob = f.read()
    values = {}
    for e in manifest["entries"]:
        shape = tuple(e["shape"])
        n = int(np.prod(shape)) if shape else 1
        a = np.frombuffer(blob, dtype="<f4", count=n,
                          offset=e["offset"]).reshape(shape)
        values[e["name"]] = a.copy()
    return values, manifest.get("meta", {})
