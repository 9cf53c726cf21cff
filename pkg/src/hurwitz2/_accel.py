"""Switch between numba-compiled kernels and the plain numpy fallback.

Set ``HURWITZ2_DISABLE_NUMBA=1`` in the environment before import to run the
interpreted path (useful for debugging and for the benchmark comparison).
"""
import os

USE_NUMBA = os.environ.get("HURWITZ2_DISABLE_NUMBA", "0").lower() not in ("1", "true", "yes")

if USE_NUMBA:
    try:
        from numba import njit as _njit
    except ImportError:  # pragma: no cover
        USE_NUMBA = False

if USE_NUMBA:

    def jit(fn):
        return _njit(cache=True, nogil=True)(fn)

else:

    def jit(fn):
        return fn
