"""Backend selection for the numeric kernels.

Set ``LCMLAT_DISABLE_NUMBA=1`` to force the pure-numpy paths.
"""

from __future__ import annotations

import os

_DISABLED = os.environ.get("LCMLAT_DISABLE_NUMBA", "").strip().lower() in {"1", "true", "yes", "on"}

try:
    if _DISABLED:
        raise ImportError("disabled by LCMLAT_DISABLE_NUMBA")
    from numba import njit

    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]
        return lambda f: f


def backend() -> str:
    return "numba" if HAVE_NUMBA else "numpy"
