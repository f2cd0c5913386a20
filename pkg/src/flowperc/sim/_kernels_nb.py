"""Numba implementations of the staggered-grid hot loops.

Array convention: all fields carry one ghost layer. For an nx x ny cell
grid with spacing h,
    U (nx+3, ny+2): u-face (fi, fj) at (fi*h, (fj+0.5)*h) -> U[fi+1, fj+1]
    V (nx+2, ny+3): v-face (fi, fj) at ((fi+0.5)*h, fj*h) -> V[fi+1, fj+1]
    P (nx+2, ny+2): cell (ci, cj) at ((ci+0.5)*h, (cj+0.5)*h) -> P[ci+1, cj+1]
Index ranges passed to kernels are half-open in padded coordinates.
"""

import math

import numpy as np
from numba import njit


@njit(cache=True)
def mom_rhs_u(U, V, RU, h, nu, ilo, ihi, jlo, jhi):
    ih = 1.0 / h
    ih2 = ih * ih
    for i in range(ilo, ihi):
        for j in range(jlo, jhi):
            ue = 0.5 * (U[i, j] + U[i + 1, j])
            uw = 0.5 * (U[i - 1, j] + U[i, j])
            un = 0.5 * (U[i, j] + U[i, j + 1])
            us = 0.5 * (U[i, j - 1] + U[i, j])
            vn = 0.5 * (V[i - 1, j + 1] + V[i, j + 1])
            vs = 0.5 * (V[i - 1, j] + V[i, j])
            adv = (ue * ue - uw * uw) * ih + (un * vn - us * vs) * ih
            dif = nu * ih2 * (
                U[i + 1, j] + U[i - 1, j] + U[i, j + 1] + U[i, j - 1]
                - 4.0 * U[i, j]
            )
            RU[i, j] = dif - adv


@njit(cache=True)
def mom_rhs_v(U, V, RV, h, nu, ilo, ihi, jlo, jhi):
    ih = 1.0 / h
    ih2 = ih * ih
    for i in range(ilo, ihi):
        for j in range(jlo, jhi):
            vn = 0.5 * (V[i, j] + V[i, j + 1])
            vs = 0.5 * (V[i, j - 1] + V[i, j])
            ve = 0.5 * (V[i, j] + V[i + 1, j])
            vw = 0.5 * (V[i - 1, j] + V[i, j])
            ue = 0.5 * (U[i + 1, j - 1] + U[i + 1, j])
            uw = 0.5 * (U[i, j - 1] + U[i, j])
            adv = (vn * vn - vs * vs) * ih + (ue * ve - uw * vw) * ih
            dif = nu * ih2 * (
                V[i + 1, j] + V[i - 1, j] + V[i, j + 1] + V[i, j - 1]
                - 4.0 * V[i, j]
            )
            RV[i, j] = dif - adv


@njit(cache=True)
def divergence(U, V, D, h, nx, ny):
    ih = 1.0 / h
    for i in range(1, nx + 1):
        for j in range(1, ny + 1):
            D[i, j] = (U[i + 1, j] - U[i, j] + V[i, j + 1] - V[i, j]) * ih


@njit(cache=True)
def correct_u(U, PHI, h, ilo, ihi, jlo, jhi):
    ih = 1.0 / h
    for i in range(ilo, ihi):
        for j in range(jlo, jhi):
            U[i, j] -= (PHI[i, j] - PHI[i - 1, j]) * ih


@njit(cache=True)
def correct_v(V, PHI, h, ilo, ihi, jlo, jhi):
    ih = 1.0 / h
    for i in range(ilo, ihi):
        for j in range(jlo, jhi):
            V[i, j] -= (PHI[i, j] - PHI[i, j - 1]) * ih


@njit(cache=True)
def rbgs_color(PHI, RHS, h2, color):
    n, m = PHI.shape
    for i in range(1, n - 1):
        j0 = 1 + ((color - i - 1) % 2)
        for j in range(j0, m - 1, 2):
            PHI[i, j] = 0.25 * (
                PHI[i + 1, j] + PHI[i - 1, j] + PHI[i, j + 1] + PHI[i, j - 1]
                - h2 * RHS[i, j]
            )


@njit(cache=True)
def residual(PHI, RHS, RES, h2):
    n, m = PHI.shape
    ih2 = 1.0 / h2
    rmax = 0.0
    for i in range(1, n - 1):
        for j in range(1, m - 1):
            r = RHS[i, j] - ih2 * (
                PHI[i + 1, j] + PHI[i - 1, j] + PHI[i, j + 1] + PHI[i, j - 1]
                - 4.0 * PHI[i, j]
            )
            RES[i, j] = r
            if abs(r) > rmax:
                rmax = abs(r)
    return rmax


@njit(cache=True)
def restrict_fw(RES_F, RHS_C):
    nc, mc = RHS_C.shape
    for I in range(1, nc - 1):
        fi = 2 * I - 1
        for J in range(1, mc - 1):
            fj = 2 * J - 1
            RHS_C[I, J] = 0.25 * (
                RES_F[fi, fj] + RES_F[fi + 1, fj]
                + RES_F[fi, fj + 1] + RES_F[fi + 1, fj + 1]
            )


@njit(cache=True)
def prolong_add(PHI_F, PHI_C):
    # PHI_C ghosts must be filled by the caller (mode-aware).
    nf, mf = PHI_F.shape
    for i in range(1, nf - 1):
        I = (i - 1) // 2 + 1
        sx = -1 if (i - 1) % 2 == 0 else 1
        for j in range(1, mf - 1):
            J = (j - 1) // 2 + 1
            sy = -1 if (j - 1) % 2 == 0 else 1
            PHI_F[i, j] += (
                9.0 * PHI_C[I, J]
                + 3.0 * PHI_C[I + sx, J]
                + 3.0 * PHI_C[I, J + sy]
                + PHI_C[I + sx, J + sy]
            ) / 16.0


@njit(cache=True, inline="always")
def _delta3(r):
    a = abs(r)
    if a <= 0.5:
        return (1.0 + math.sqrt(1.0 - 3.0 * r * r)) / 3.0
    if a <= 1.5:
        return (5.0 - 3.0 * a - math.sqrt(1.0 - 3.0 * (1.0 - a) ** 2)) / 6.0
    return 0.0


@njit(cache=True)
def ib_interp(U, V, mx, my, h):
    nm = mx.shape[0]
    um = np.zeros(nm)
    vm = np.zeros(nm)
    for l in range(nm):
        gx = mx[l] / h
        gy = my[l] / h - 0.5
        i0 = int(math.floor(gx)) - 1
        j0 = int(math.floor(gy)) - 1
        acc = 0.0
        for di in range(4):
            wx = _delta3(gx - (i0 + di))
            if wx == 0.0:
                continue
            for dj in range(4):
                wy = _delta3(gy - (j0 + dj))
                if wy != 0.0:
                    acc += U[i0 + di + 1, j0 + dj + 1] * wx * wy
        um[l] = acc

        gx = mx[l] / h - 0.5
        gy = my[l] / h
        i0 = int(math.floor(gx)) - 1
        j0 = int(math.floor(gy)) - 1
        acc = 0.0
        for di in range(4):
            wx = _delta3(gx - (i0 + di))
            if wx == 0.0:
                continue
            for dj in range(4):
                wy = _delta3(gy - (j0 + dj))
                if wy != 0.0:
                    acc += V[i0 + di + 1, j0 + dj + 1] * wx * wy
        vm[l] = acc
    return um, vm


@njit(cache=True)
def ib_spread(U, V, mx, my, dus, dvs, h, scale):
    # Adds scale * du_l * delta_h to the face velocities around each marker.
    nm = mx.shape[0]
    for l in range(nm):
        gx = mx[l] / h
        gy = my[l] / h - 0.5
        i0 = int(math.floor(gx)) - 1
        j0 = int(math.floor(gy)) - 1
        s = dus[l] * scale
        for di in range(4):
            wx = _delta3(gx - (i0 + di))
            if wx == 0.0:
                continue
            for dj in range(4):
                wy = _delta3(gy - (j0 + dj))
                if wy != 0.0:
                    U[i0 + di + 1, j0 + dj + 1] += s * wx * wy

        gx = mx[l] / h - 0.5
        gy = my[l] / h
        i0 = int(math.floor(gx)) - 1
        j0 = int(math.floor(gy)) - 1
        s = dvs[l] * scale
        for di in range(4):
            wx = _delta3(gx - (i0 + di))
            if wx == 0.0:
                continue
            for dj in range(4):
                wy = _delta3(gy - (j0 + dj))
                if wy != 0.0:
                    V[i0 + di + 1, j0 + dj + 1] += s * wx * wy


@njit(cache=True)
def sample_cc(P, xs, ys, h):
    # Bilinear sample of a cell-centered padded field at arbitrary points.
    n = xs.shape[0]
    out = np.empty(n)
    for k in range(n):
        gx = xs[k] / h - 0.5
        gy = ys[k] / h - 0.5
        i0 = int(math.floor(gx))
        j0 = int(math.floor(gy))
        fx = gx - i0
        fy = gy - j0
        out[k] = (
            P[i0 + 1, j0 + 1] * (1 - fx) * (1 - fy)
            + P[i0 + 2, j0 + 1] * fx * (1 - fy)
            + P[i0 + 1, j0 + 2] * (1 - fx) * fy
            + P[i0 + 2, j0 + 2] * fx * fy
        )
    return out


@njit(cache=True)
def ab2_update(F, R_new, R_old, dt, b1, b2, ilo, ihi, jlo, jhi):
    for i in range(ilo, ihi):
        for j in range(jlo, jhi):
            F[i, j] += dt * (b1 * R_new[i, j] + b2 * R_old[i, j])


@njit(cache=True)
def maxabs2(U, V):
    m = 0.0
    for i in range(U.shape[0]):
        for j in range(U.shape[1]):
            a = abs(U[i, j])
            if a > m:
                m = a
    for i in range(V.shape[0]):
        for j in range(V.shape[1]):
            a = abs(V[i, j])
            if a > m:
                m = a
    return m
