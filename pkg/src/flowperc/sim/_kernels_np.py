"""Vectorized numpy fallbacks for the staggered-grid hot loops.

Same signatures and array conventions as _kernels_nb; see that module's
docstring for the padding layout.
"""

import numpy as np


def mom_rhs_u(U, V, RU, h, nu, ilo, ihi, jlo, jhi):
    ih = 1.0 / h
    ih2 = ih * ih
    u = U[ilo:ihi, jlo:jhi]
    ue = 0.5 * (u + U[ilo + 1:ihi + 1, jlo:jhi])
    uw = 0.5 * (U[ilo - 1:ihi - 1, jlo:jhi] + u)
    un = 0.5 * (u + U[ilo:ihi, jlo + 1:jhi + 1])
    us = 0.5 * (U[ilo:ihi, jlo - 1:jhi - 1] + u)
    vn = 0.5 * (V[ilo - 1:ihi - 1, jlo + 1:jhi + 1] + V[ilo:ihi, jlo + 1:jhi + 1])
    vs = 0.5 * (V[ilo - 1:ihi - 1, jlo:jhi] + V[ilo:ihi, jlo:jhi])
    adv = (ue * ue - uw * uw) * ih + (un * vn - us * vs) * ih
    dif = nu * ih2 * (
        U[ilo + 1:ihi + 1, jlo:jhi] + U[ilo - 1:ihi - 1, jlo:jhi]
        + U[ilo:ihi, jlo + 1:jhi + 1] + U[ilo:ihi, jlo - 1:jhi - 1]
        - 4.0 * u
    )
    RU[ilo:ihi, jlo:jhi] = dif - adv


def mom_rhs_v(U, V, RV, h, nu, ilo, ihi, jlo, jhi):
    ih = 1.0 / h
    ih2 = ih * ih
    v = V[ilo:ihi, jlo:jhi]
    vn = 0.5 * (v + V[ilo:ihi, jlo + 1:jhi + 1])
    vs = 0.5 * (V[ilo:ihi, jlo - 1:jhi - 1] + v)
    ve = 0.5 * (v + V[ilo + 1:ihi + 1, jlo:jhi])
    vw = 0.5 * (V[ilo - 1:ihi - 1, jlo:jhi] + v)
    ue = 0.5 * (U[ilo + 1:ihi + 1, jlo - 1:jhi - 1] + U[ilo + 1:ihi + 1, jlo:jhi])
    uw = 0.5 * (U[ilo:ihi, jlo - 1:jhi - 1] + U[ilo:ihi, jlo:jhi])
    adv = (vn * vn - vs * vs) * ih + (ue * ve - uw * vw) * ih
    dif = nu * ih2 * (
        V[ilo + 1:ihi + 1, jlo:jhi] + V[ilo - 1:ihi - 1, jlo:jhi]
        + V[ilo:ihi, jlo + 1:jhi + 1] + V[ilo:ihi, jlo - 1:jhi - 1]
        - 4.0 * v
    )
    RV[ilo:ihi, jlo:jhi] = dif - adv


def divergence(U, V, D, h, nx, ny):
    ih = 1.0 / h
    D[1:nx + 1, 1:ny + 1] = (
        U[2:nx + 2, 1:ny + 1] - U[1:nx + 1, 1:ny + 1]
        + V[1:nx + 1, 2:ny + 2] - V[1:nx + 1, 1:ny + 1]
    ) * ih


def correct_u(U, PHI, h, ilo, ihi, jlo, jhi):
    ih = 1.0 / h
    U[ilo:ihi, jlo:jhi] -= (PHI[ilo:ihi, jlo:jhi] - PHI[ilo - 1:ihi - 1, jlo:jhi]) * ih


def correct_v(V, PHI, h, ilo, ihi, jlo, jhi):
    ih = 1.0 / h
    V[ilo:ihi, jlo:jhi] -= (PHI[ilo:ihi, jlo:jhi] - PHI[ilo:ihi, jlo - 1:jhi - 1]) * ih


def rbgs_color(PHI, RHS, h2, color):
    n, m = PHI.shape
    for i0 in (1, 2):
        j0 = 1 + ((color - i0 - 1) % 2)
        PHI[i0:n - 1:2, j0:m - 1:2] = 0.25 * (
            PHI[i0 + 1:n:2, j0:m - 1:2] + PHI[i0 - 1:n - 2:2, j0:m - 1:2]
            + PHI[i0:n - 1:2, j0 + 1:m:2] + PHI[i0:n - 1:2, j0 - 1:m - 2:2]
            - h2 * RHS[i0:n - 1:2, j0:m - 1:2]
        )


def residual(PHI, RHS, RES, h2):
    n, m = PHI.shape
    ih2 = 1.0 / h2
    RES[1:n - 1, 1:m - 1] = RHS[1:n - 1, 1:m - 1] - ih2 * (
        PHI[2:n, 1:m - 1] + PHI[0:n - 2, 1:m - 1]
        + PHI[1:n - 1, 2:m] + PHI[1:n - 1, 0:m - 2]
        - 4.0 * PHI[1:n - 1, 1:m - 1]
    )
    return float(np.max(np.abs(RES[1:n - 1, 1:m - 1])))


def restrict_fw(RES_F, RHS_C):
    nc, mc = RHS_C.shape
    a = RES_F[1:2 * (nc - 2) + 1, 1:2 * (mc - 2) + 1]
    RHS_C[1:nc - 1, 1:mc - 1] = 0.25 * (
        a[0::2, 0::2] + a[1::2, 0::2] + a[0::2, 1::2] + a[1::2, 1::2]
    )


def prolong_add(PHI_F, PHI_C):
    nf, mf = PHI_F.shape
    nc = (nf - 2) // 2
    mc = (mf - 2) // 2
    C = PHI_C[1:nc + 1, 1:mc + 1]
    W = PHI_C[0:nc, 1:mc + 1]
    E = PHI_C[2:nc + 2, 1:mc + 1]
    S = PHI_C[1:nc + 1, 0:mc]
    N = PHI_C[1:nc + 1, 2:mc + 2]
    SW = PHI_C[0:nc, 0:mc]
    SE = PHI_C[2:nc + 2, 0:mc]
    NW = PHI_C[0:nc, 2:mc + 2]
    NE = PHI_C[2:nc + 2, 2:mc + 2]
    F = PHI_F[1:nf - 1, 1:mf - 1]
    F[0::2, 0::2] += (9.0 * C + 3.0 * W + 3.0 * S + SW) / 16.0
    F[1::2, 0::2] += (9.0 * C + 3.0 * E + 3.0 * S + SE) / 16.0
    F[0::2, 1::2] += (9.0 * C + 3.0 * W + 3.0 * N + NW) / 16.0
    F[1::2, 1::2] += (9.0 * C + 3.0 * E + 3.0 * N + NE) / 16.0


def _delta3(r):
    a = np.abs(r)
    inner = a <= 0.5
    outer = (a > 0.5) & (a <= 1.5)
    out = np.zeros_like(a)
    out[inner] = (1.0 + np.sqrt(1.0 - 3.0 * r[inner] ** 2)) / 3.0
    am = a[outer]
    out[outer] = (5.0 - 3.0 * am - np.sqrt(1.0 - 3.0 * (1.0 - am) ** 2)) / 6.0
    return out


def _window(g):
    i0 = np.floor(g).astype(np.int64) - 1
    idx = i0[:, None] + np.arange(4)[None, :]
    w = _delta3(g[:, None] - idx)
    return idx, w


def ib_interp(U, V, mx, my, h):
    ix, wx = _window(mx / h)
    jy, wy = _window(my / h - 0.5)
    vals = U[ix[:, :, None] + 1, jy[:, None, :] + 1]
    um = np.einsum("mij,mi,mj->m", vals, wx, wy)

    ix, wx = _window(mx / h - 0.5)
    jy, wy = _window(my / h)
    vals = V[ix[:, :, None] + 1, jy[:, None, :] + 1]
    vm = np.einsum("mij,mi,mj->m", vals, wx, wy)
    return um, vm


def ib_spread(U, V, mx, my, dus, dvs, h, scale):
    ix, wx = _window(mx / h)
    jy, wy = _window(my / h - 0.5)
    contrib = scale * dus[:, None, None] * wx[:, :, None] * wy[:, None, :]
    np.add.at(U, (ix[:, :, None] + 1, jy[:, None, :] + 1), contrib)

    ix, wx = _window(mx / h - 0.5)
    jy, wy = _window(my / h)
    contrib = scale * dvs[:, None, None] * wx[:, :, None] * wy[:, None, :]
    np.add.at(V, (ix[:, :, None] + 1, jy[:, None, :] + 1), contrib)


def sample_cc(P, xs, ys, h):
    gx = xs / h - 0.5
    gy = ys / h - 0.5
    i0 = np.floor(gx).astype(np.int64)
    j0 = np.floor(gy).astype(np.int64)
    fx = gx - i0
    fy = gy - j0
    return (
        P[i0 + 1, j0 + 1] * (1 - fx) * (1 - fy)
        + P[i0 + 2, j0 + 1] * fx * (1 - fy)
        + P[i0 + 1, j0 + 2] * (1 - fx) * fy
        + P[i0 + 2, j0 + 2] * fx * fy
    )


def ab2_update(F, R_new, R_old, dt, b1, b2, ilo, ihi, jlo, jhi):
    F[ilo:ihi, jlo:jhi] += dt * (b1 * R_new[ilo:ihi, jlo:jhi]
                                 + b2 * R_old[ilo:ihi, jlo:jhi])


def maxabs2(U, V):
    return max(float(np.max(np.abs(U))), float(np.max(np.abs(V))))
