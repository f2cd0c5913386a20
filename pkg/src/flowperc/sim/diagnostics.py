"""Force-history utilities: shedding frequency and windowed statistics."""

import numpy as np

from ..errors import FlowpercError, NonSheddingError


def strouhal(t: np.ndarray, lift: np.ndarray, window=None,
             u_inf: float = 1.0, diameter: float = 1.0) -> float:
    """Dominant shedding frequency as St = f*D/U.

    The primary estimate comes from upward zero crossings of the
    mean-removed lift signal (noise-filtered); it is cross-checked against
    the FFT peak and rejected if the two disagree grossly.
    """
    t = np.asarray(t, dtype=float)
    s = np.asarray(lift, dtype=float)
    if window is not None:
        m = (t >= window[0]) & (t <= window[1])
        t, s = t[m], s[m]
    if len(s) < 8:
        raise NonSheddingError("lift history too short")
    s = s - s.mean()
    if not np.any(s[:-1] * s[1:] < 0.0):
        raise NonSheddingError("no zero crossings in lift history")

    # spectral peak gives a period scaffold for smoothing and outlier checks
    dt = float(np.median(np.diff(t)))
    spec = np.abs(np.fft.rfft(s))
    freqs = np.fft.rfftfreq(len(s), d=dt)
    k = int(np.argmax(spec[1:])) + 1
    f_fft = float(freqs[k])
    df = float(freqs[1])

    w = max(1, int(round(1.0 / (12.0 * f_fft * dt))))
    if w > 1:
        kern = np.ones(w) / w
        s = np.convolve(s, kern, mode="same")
    up = np.flatnonzero((s[:-1] < 0.0) & (s[1:] >= 0.0))
    if len(up) < 2:
        raise NonSheddingError("no repeated zero crossings in lift history")
    tc = t[up] - s[up] * (t[up + 1] - t[up]) / (s[up + 1] - s[up])
    min_sep = 0.5 / f_fft
    kept = [tc[0]]
    for x in tc[1:]:
        if x - kept[-1] >= min_sep:
            kept.append(x)
    if len(kept) < 2:
        raise NonSheddingError("no clean shedding periods found")
    f_zc = (len(kept) - 1) / (kept[-1] - kept[0])

    if abs(f_fft - f_zc) > max(2.0 * df, 0.2 * f_zc):
        raise FlowpercError(
            f"frequency estimates disagree: zero-crossing {f_zc:.4f} vs "
            f"spectral {f_fft:.4f}"
        )
    return f_zc * diameter / u_inf


class ForceHistory:
    """Append-only (t, C_D, C_L) record with windowed statistics."""

    def __init__(self):
        self.t = []
        self.cd = []
        self.cl = []

    def append(self, t: float, cd: float, cl: float):
        self.t.append(t)
        self.cd.append(cd)
        self.cl.append(cl)

    def arrays(self):
        return (np.asarray(self.t), np.asarray(self.cd), np.asarray(self.cl))

    def mean_cd(self, t_from: float) -> float:
        t, cd, _ = self.arrays()
        return float(cd[t >= t_from].mean())

    def max_cl(self, t_from: float) -> float:
        t, _, cl = self.arrays()
        return float(cl[t >= t_from].max())

    def strouhal(self, t_from: float) -> float:
        t, _, cl = self.arrays()
        return strouhal(t, cl, window=(t_from, t[-1]))
