import numpy as np
import pytest

from flowperc.errors import NonSheddingError
from flowperc.sim.diagnostics import ForceHistory, strouhal


def test_pure_sine():
    t = np.arange(0.0, 120.0, 0.1)
    cl = 0.3 * np.sin(2 * np.pi * 0.2 * t + 0.3)
    assert strouhal(t, cl) == pytest.approx(0.2, abs=1e-3)


def test_sine_with_offset_and_noise():
    rng = np.random.default_rng(42)
    t = np.arange(0.0, 150.0, 0.1)
    clean = 0.3 * np.sin(2 * np.pi * 0.167 * t)
    noisy = 0.5 + clean + 0.1 * 0.3 * rng.standard_normal(len(t))
    st = strouhal(t, noisy)
    assert abs(st - 0.167) / 0.167 < 0.02


def test_window_argument():
    t = np.arange(0.0, 200.0, 0.1)
    f = np.where(t < 100.0, 0.15, 0.25)
    cl = np.sin(2 * np.pi * f * t)
    st = strouhal(t, cl, window=(120.0, 200.0))
    assert st == pytest.approx(0.25, abs=5e-3)


def test_no_crossings_raises():
    t = np.arange(0.0, 50.0, 0.1)
    with pytest.raises(NonSheddingError):
        strouhal(t, np.linspace(0.0, 1.0, len(t)))


def test_force_history_stats():
    h = ForceHistory()
    for k in range(400):
        t = 0.1 * k
        h.append(t, 1.5 + 0.05 * np.sin(2 * np.pi * 0.2 * t),
                 0.4 * np.sin(2 * np.pi * 0.2 * t))
    assert h.mean_cd(10.0) == pytest.approx(1.5, abs=5e-3)
    assert h.max_cl(10.0) == pytest.approx(0.4, abs=1e-3)
    assert h.strouhal(5.0) == pytest.approx(0.2, abs=1e-3)
