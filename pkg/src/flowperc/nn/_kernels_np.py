"""Pure-numpy GRU-sequence kernels; mirrors _kernels_nb step for step."""

import numpy as np


def gru_seq_forward(GX, Uzr, Uh, h0, Hs, Z, R, HC):
    T, B, H3 = GX.shape
    H = H3 // 3
    h = h0.copy()
    for t in range(T):
        gh = h @ Uzr
        z = 1.0 / (1.0 + np.exp(-(GX[t, :, :H] + gh[:, :H])))
        r = 1.0 / (1.0 + np.exp(-(GX[t, :, H:2 * H] + gh[:, H:])))
        rh = r * h
        hc = np.tanh(GX[t, :, 2 * H:] + rh @ Uh)
        h = (1.0 - z) * h + z * hc
        Z[t] = z
        R[t] = r
        HC[t] = hc
        Hs[t] = h


def gru_seq_backward(GX, Uzr, Uh, h0, Hs, Z, R, HC, dH, dGX, dUzr, dUh):
    T, B, H3 = GX.shape
    H = H3 // 3
    dh = np.zeros((B, H), dtype=GX.dtype)
    dzr = np.empty((B, 2 * H), dtype=GX.dtype)
    for t in range(T - 1, -1, -1):
        dh = dh + dH[t]
        hprev = Hs[t - 1] if t > 0 else h0
        z = Z[t]
        r = R[t]
        hc = HC[t]
        dz = dh * (hc - hprev)
        dhc = dh * z
        dhprev = dh * (1.0 - z)
        dhc_pre = dhc * (1.0 - hc * hc)
        rh = r * hprev
        dUh += rh.T @ dhc_pre
        drh = dhc_pre @ Uh.T
        dr = drh * hprev
        dhprev = dhprev + drh * r
        dz_pre = dz * z * (1.0 - z)
        dr_pre = dr * r * (1.0 - r)
        dzr[:, :H] = dz_pre
        dzr[:, H:] = dr_pre
        dUzr += hprev.T @ dzr
        dhprev = dhprev + dzr @ Uzr.T
        dGX[t, :, :H] = dz_pre
        dGX[t, :, H:2 * H] = dr_pre
        dGX[t, :, 2 * H:] = dhc_pre
        dh = dhprev
    return dh
