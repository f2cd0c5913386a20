"""Environment recording format.

Binary layout: 16-byte header (8-byte magic "FPENVDS1", uint32 version,
uint32 reserved), then fixed-width little-endian float32 records:

    t, y_obstacle, y_agent, p[200], C_D, C_L      (205 floats, 820 bytes)

The CSV export mirrors the records losslessly (9 significant digits round-
trips float32 exactly).
"""

import io
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..errors import DataError

MAGIC = b"FPENVDS1"
VERSION = 1
N_SENSORS = 200
RECORD_FLOATS = 3 + N_SENSORS + 2

_CSV_HEADER = ("t,y_obstacle,y_agent,"
               + ",".join(f"p{j:03d}" for j in range(N_SENSORS))
               + ",cd,cl")


@dataclass
class Dataset:
    """In-memory view of a recording: column arrays + the raw record block."""

    records: np.ndarray  # (n, 205) float32

    @property
    def t(self):
        """Tick-exact sample times.

        Records store t as float32 (wire format); recordings are always on
        the 0.1 grid, so exact times are reconstructed from the first stamp.
        """
        raw = self.records[:, 0]
        k0 = int(round(float(raw[0]) / 0.1))
        return (k0 + np.arange(len(raw))) * 0.1

    @property
    def t_raw(self):
        return self.records[:, 0]

    @property
    def y_obstacle(self):
        return self.records[:, 1]

    @property
    def y_agent(self):
        return self.records[:, 2]

    @property
    def pressures(self):
        return self.records[:, 3:3 + N_SENSORS]

    @property
    def cd(self):
        return self.records[:, 3 + N_SENSORS]

    @property
    def cl(self):
        return self.records[:, 4 + N_SENSORS]

    def __len__(self):
        return self.records.shape[0]


class DatasetWriter:
    def __init__(self, path):
        self.path = Path(path)
        self._f = open(self.path, "wb")
        self._f.write(MAGIC)
        self._f.write(np.asarray([VERSION, 0], dtype="<u4").tobytes())
        self.n = 0

    def append(self, t, y_obstacle, y_agent, pressures, cd, cl):
        row = np.empty(RECORD_FLOATS, dtype="<f4")
        row[0] = t
        row[1] = y_obstacle
        row[2] = y_agent
        row[3:3 + N_SENSORS] = pressures
        row[3 + N_SENSORS] = cd
        row[4 + N_SENSORS] = cl
        self._f.write(row.tobytes())
        self.n += 1

    def close(self):
        self._f.close()

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()


def load_dataset(path) -> Dataset:
    path = Path(path)
    if not path.exists():
        raise DataError(f"dataset not found: {path}")
    blob = path.read_bytes()
    if blob[:8] != MAGIC:
        raise DataError(f"{path} is not a dataset file")
    version = int(np.frombuffer(blob[8:12], dtype="<u4")[0])
    if version != VERSION:
        raise DataError(f"unsupported dataset version {version}")
    body = blob[16:]
    if len(body) % (4 * RECORD_FLOATS):
        raise DataError(f"{path} is truncated")
    rec = np.frombuffer(body, dtype="<f4").reshape(-1, RECORD_FLOATS)
    return Dataset(records=rec.copy())


def export_csv(dataset: Dataset, path):
    with open(path, "w", newline="") as f:
        f.write(_CSV_HEADER + "\n")
        np.savetxt(f, dataset.records, fmt="%.9g", delimiter=",")


def import_csv(path) -> Dataset:
    rec = np.loadtxt(path, dtype="<f4", delimiter=",", skiprows=1)
    rec = np.atleast_2d(rec)
    if rec.shape[1] != RECORD_FLOATS:
        raise DataError(f"{path}: expected {RECORD_FLOATS} columns")
    return Dataset(records=rec)


def csv_string(dataset: Dataset) -> str:
    buf = io.StringIO()
    buf.write(_CSV_HEADER + "\n")
    np.savetxt(buf, dataset.records, fmt="%.9g", delimiter=",")
    return buf.getvalue()
