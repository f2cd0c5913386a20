"""Kernel backend selection.

Hot loops exist in two implementations with identical signatures and
semantics: a numba @njit version and a vectorized pure-numpy version.
The active path is chosen once at import time:

    FLOWPERC_DISABLE_NUMBA=1  -> numpy fallback
    numba import fails        -> numpy fallback (with a one-line notice)
    otherwise                 -> numba kernels

`benchmarks/bench_backends.py` times both paths side by side.
"""

import os

_flag = os.environ.get("FLOWPERC_DISABLE_NUMBA", "0").strip().lower()
_disabled = _flag in ("1", "true", "yes")

if _disabled:
    NUMBA_ENABLED = False
else:
    try:
        import numba  # noqa: F401

        NUMBA_ENABLED = True
    except ImportError:  # pragma: no cover - exercised only without numba
        print("flowperc: numba unavailable, using pure-numpy kernels")
        NUMBA_ENABLED = False


def active_backend() -> str:
    return "numba" if NUMBA_ENABLED else "numpy"
