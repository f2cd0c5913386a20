"""Active kernel set for the flow solver (numba or numpy, see flowperc.backend)."""

from ..backend import NUMBA_ENABLED

if NUMBA_ENABLED:
    from ._kernels_nb import (
        ab2_update,
        correct_u,
        correct_v,
        divergence,
        ib_interp,
        ib_spread,
        maxabs2,
        mom_rhs_u,
        mom_rhs_v,
        prolong_add,
        rbgs_color,
        residual,
        restrict_fw,
        sample_cc,
    )
else:
    from ._kernels_np import (
        ab2_update,
        correct_u,
        correct_v,
        divergence,
        ib_interp,
        ib_spread,
        maxabs2,
        mom_rhs_u,
        mom_rhs_v,
        prolong_add,
        rbgs_color,
        residual,
        restrict_fw,
        sample_cc,
    )

__all__ = [
    "ab2_update",
    "correct_u",
    "correct_v",
    "divergence",
    "ib_interp",
    "ib_spread",
    "maxabs2",
    "mom_rhs_u",
    "mom_rhs_v",
    "prolong_add",
    "rbgs_color",
    "residual",
    "restrict_fw",
    "sample_cc",
]
