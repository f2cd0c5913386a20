"""Active GRU kernels (numba or numpy, see flowperc.backend)."""

from ..backend import NUMBA_ENABLED

if NUMBA_ENABLED:
    from ._kernels_nb import gru_seq_backward, gru_seq_forward
else:
    from ._kernels_np import gru_seq_backward, gru_seq_forward

__all__ = ["gru_seq_backward", "gru_seq_forward"]
