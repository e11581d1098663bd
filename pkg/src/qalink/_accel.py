"""Numba switch.

Set ``QALINK_DISABLE_NUMBA=1`` to force the pure-numpy kernels, e.g. when
numba is unavailable or for debugging.
"""

import os

USE_NUMBA = os.environ.get("QALINK_DISABLE_NUMBA", "0").lower() not in ("1", "true", "yes")

if USE_NUMBA:
    try:
        import numba
    except ImportError:  # pragma: no cover
        USE_NUMBA = False

if USE_NUMBA:
    njit = numba.njit(cache=True)
else:
    def njit(fn):
        return fn
