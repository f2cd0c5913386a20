"""Numba vs numpy kernel parity on random inputs.

Both backends import directly here, independent of FLOWPERC_DISABLE_NUMBA.
"""

import numpy as np
import pytest

from flowperc.backend import NUMBA_ENABLED

if not NUMBA_ENABLED:
    pytest.skip("numba unavailable/disabled; parity needs both backends",
                allow_module_level=True)

import flowperc.nn._kernels_nb as nnb
import flowperc.nn._kernels_np as nnp
import flowperc.sim._kernels_nb as snb
import flowperc.sim._kernels_np as snp

RNG = np.random.default_rng(1234)


def _pad(nx, ny):
    return RNG.standard_normal((nx, ny))


def test_momentum_kernels_parity():
    nx, ny = 40, 24
    U = _pad(nx + 3, ny + 2)
    V = _pad(nx + 2, ny + 3)
    ru1 = np.zeros_like(U)
    ru2 = np.zeros_like(U)
    rv1 = np.zeros_like(V)
    rv2 = np.zeros_like(V)
    args = (0.05, 0.01, 2, nx + 1, 1, ny + 1)
    snb.mom_rhs_u(U, V, ru1, *args)
    snp.mom_rhs_u(U, V, ru2, *args)
    assert np.allclose(ru1, ru2, atol=1e-13)
    argsv = (0.05, 0.01, 1, nx + 1, 2, ny + 1)
    snb.mom_rhs_v(U, V, rv1, *argsv)
    snp.mom_rhs_v(U, V, rv2, *argsv)
    assert np.allclose(rv1, rv2, atol=1e-13)


def test_poisson_kernels_parity():
    n, m = 34, 18
    PHI1 = _pad(n + 2, m + 2)
    PHI2 = PHI1.copy()
    RHS = _pad(n + 2, m + 2)
    for color in (0, 1):
        snb.rbgs_color(PHI1, RHS, 0.01, color)
        snp.rbgs_color(PHI2, RHS, 0.01, color)
    assert np.allclose(PHI1, PHI2, atol=1e-13)

    r1 = np.zeros_like(PHI1)
    r2 = np.zeros_like(PHI2)
    m1 = snb.residual(PHI1, RHS, r1, 0.01)
    m2 = snp.residual(PHI2, RHS, r2, 0.01)
    assert np.allclose(r1, r2, atol=1e-12) and abs(m1 - m2) < 1e-12

    C1 = np.zeros((n // 2 + 2, m // 2 + 2))
    C2 = np.zeros_like(C1)
    snb.restrict_fw(r1, C1)
    snp.restrict_fw(r2, C2)
    assert np.allclose(C1, C2, atol=1e-13)

    F1 = _pad(n + 2, m + 2)
    F2 = F1.copy()
    CC = _pad(n // 2 + 2, m // 2 + 2)
    snb.prolong_add(F1, CC)
    snp.prolong_add(F2, CC)
    assert np.allclose(F1, F2, atol=1e-13)


def test_ib_kernels_parity():
    nx, ny, h = 40, 24, 0.05
    U1 = _pad(nx + 3, ny + 2)
    V1 = _pad(nx + 2, ny + 3)
    U2, V2 = U1.copy(), V1.copy()
    ang = np.linspace(0, 2 * np.pi, 37)[:-1]
    mx = 1.0 + 0.3 * np.cos(ang)
    my = 0.6 + 0.3 * np.sin(ang)
    u1, v1 = snb.ib_interp(U1, V1, mx, my, h)
    u2, v2 = snp.ib_interp(U2, V2, mx, my, h)
    assert np.allclose(u1, u2, atol=1e-13)
    assert np.allclose(v1, v2, atol=1e-13)

    du = RNG.standard_normal(len(mx))
    dv = RNG.standard_normal(len(mx))
    snb.ib_spread(U1, V1, mx, my, du, dv, h, 0.9)
    snp.ib_spread(U2, V2, mx, my, du, dv, h, 0.9)
    assert np.allclose(U1, U2, atol=1e-12)
    assert np.allclose(V1, V2, atol=1e-12)


def test_ib_delta_partition_of_unity():
    # interpolating a constant field returns the constant
    nx, ny, h = 40, 24, 0.05
    U = np.full((nx + 3, ny + 2), 1.7)
    V = np.full((nx + 2, ny + 3), -0.4)
    mx = np.array([1.01, 0.77, 1.3])
    my = np.array([0.55, 0.61, 0.66])
    um, vm = snb.ib_interp(U, V, mx, my, h)
    assert np.allclose(um, 1.7, atol=1e-12)
    assert np.allclose(vm, -0.4, atol=1e-12)


def test_sample_cc_parity_and_exactness():
    nx, ny, h = 30, 20, 0.1
    P = np.zeros((nx + 2, ny + 2))
    xs = (np.arange(nx) + 0.5) * h
    ys = (np.arange(ny) + 0.5) * h
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    P[1:-1, 1:-1] = 2.0 * X - 3.0 * Y + 0.5  # bilinear-exact field
    px = np.array([0.77, 1.23, 2.5])
    py = np.array([0.61, 0.34, 1.11])
    v1 = snb.sample_cc(P, px, py, h)
    v2 = snp.sample_cc(P, px, py, h)
    assert np.allclose(v1, v2, atol=1e-13)
    assert np.allclose(v1, 2.0 * px - 3.0 * py + 0.5, atol=1e-12)


def test_gru_kernels_parity():
    T, B, I, H = 7, 5, 6, 4
    dt = np.float32
    GX = RNG.standard_normal((T, B, 3 * H)).astype(dt)
    Uzr = (0.3 * RNG.standard_normal((H, 2 * H))).astype(dt)
    Uh = (0.3 * RNG.standard_normal((H, H))).astype(dt)
    h0 = RNG.standard_normal((B, H)).astype(dt)
    bufs1 = [np.empty((T, B, H), dtype=dt) for _ in range(4)]
    bufs2 = [np.empty((T, B, H), dtype=dt) for _ in range(4)]
    nnb.gru_seq_forward(GX, Uzr, Uh, h0, *bufs1)
    nnp.gru_seq_forward(GX, Uzr, Uh, h0, *bufs2)
    for a, b in zip(bufs1, bufs2):
        assert np.allclose(a, b, atol=1e-6)

    dH = RNG.standard_normal((T, B, H)).astype(dt)
    out1 = [np.zeros_like(GX), np.zeros_like(Uzr), np.zeros_like(Uh)]
    out2 = [np.zeros_like(GX), np.zeros_like(Uzr), np.zeros_like(Uh)]
    dh1 = nnb.gru_seq_backward(GX, Uzr, Uh, h0, *bufs1, dH, *out1)
    dh2 = nnp.gru_seq_backward(GX, Uzr, Uh, h0, *bufs2, dH, *out2)
    assert np.allclose(dh1, dh2, atol=1e-5)
    for a, b in zip(out1, out2):
        assert np.allclose(a, b, atol=1e-5)
