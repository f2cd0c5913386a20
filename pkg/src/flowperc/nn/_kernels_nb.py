"""Numba GRU-sequence kernels (forward + BPTT backward).

Gate packing: the input projection GX holds [z | r | candidate] blocks of
width H, already including the bias. Recurrent weights are split into
Uzr (H, 2H) for the z/r gates and Uh (H, H) for the candidate, whose
recurrent input is r * h_prev. Update rule:

    h_t = (1 - z_t) * h_{t-1} + z_t * tanh(GX_h + (r_t * h_{t-1}) @ Uh)

Gate math runs element-wise (scalar f64 intermediates, stored back in the
array dtype) so the BLAS calls always see matching dtypes.
"""

import math

import numpy as np
from numba import njit


@njit(cache=True)
def gru_seq_forward(GX, Uzr, Uh, h0, Hs, Z, R, HC):
    T, B, H3 = GX.shape
    H = H3 // 3
    h = h0.copy()
    rh = np.empty((B, H), dtype=GX.dtype)
    for t in range(T):
        gh = np.dot(h, Uzr)
        for b in range(B):
            for k in range(H):
                Z[t, b, k] = 1.0 / (1.0 + math.exp(-(GX[t, b, k]
                                                     + gh[b, k])))
                R[t, b, k] = 1.0 / (1.0 + math.exp(-(GX[t, b, H + k]
                                                     + gh[b, H + k])))
                rh[b, k] = R[t, b, k] * h[b, k]
        hdot = np.dot(rh, Uh)
        for b in range(B):
            for k in range(H):
                hc = math.tanh(GX[t, b, 2 * H + k] + hdot[b, k])
                HC[t, b, k] = hc
                h[b, k] = (1.0 - Z[t, b, k]) * h[b, k] + Z[t, b, k] * hc
        Hs[t] = h


@njit(cache=True)
def gru_seq_backward(GX, Uzr, Uh, h0, Hs, Z, R, HC, dH, dGX, dUzr, dUh):
    T, B, H3 = GX.shape
    H = H3 // 3
    UzrT = np.ascontiguousarray(Uzr.T)
    UhT = np.ascontiguousarray(Uh.T)
    dh = np.zeros((B, H), dtype=GX.dtype)
    dzr = np.empty((B, 2 * H), dtype=GX.dtype)
    dhc_pre = np.empty((B, H), dtype=GX.dtype)
    rh = np.empty((B, H), dtype=GX.dtype)
    for t in range(T - 1, -1, -1):
        hprev = Hs[t - 1] if t > 0 else h0
        for b in range(B):
            for k in range(H):
                dhk = dh[b, k] + dH[t, b, k]
                dh[b, k] = dhk
                z = Z[t, b, k]
                hc = HC[t, b, k]
                dhc = dhk * z
                dhc_pre[b, k] = dhc * (1.0 - hc * hc)
                rh[b, k] = R[t, b, k] * hprev[b, k]
        dUh += np.dot(np.ascontiguousarray(rh.T), dhc_pre)
        drh = np.dot(dhc_pre, UhT)
        for b in range(B):
            for k in range(H):
                z = Z[t, b, k]
                r = R[t, b, k]
                dz = dh[b, k] * (HC[t, b, k] - hprev[b, k])
                dhp = dh[b, k] * (1.0 - z) + drh[b, k] * r
                dr = drh[b, k] * hprev[b, k]
                dz_pre = dz * z * (1.0 - z)
                dr_pre = dr * r * (1.0 - r)
                dzr[b, k] = dz_pre
                dzr[b, H + k] = dr_pre
                dGX[t, b, k] = dz_pre
                dGX[t, b, H + k] = dr_pre
                dGX[t, b, 2 * H + k] = dhc_pre[b, k]
                dh[b, k] = dhp
        dUzr += np.dot(np.ascontiguousarray(hprev.T), dzr)
        dh += np.dot(dzr, UzrT)
    return dh
