"""Backend selection for the search kernels.

Set ``CAYLEYCORE_PURE=1`` to force the pure-Python kernels even when numba is
importable.
"""

from __future__ import annotations

import os

PURE_ENV = "CAYLEYCORE_PURE"


def _want_numba() -> bool:
    if os.environ.get(PURE_ENV, "").strip().lower() in {"1", "true", "yes", "on"}:
        return False
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


USE_NUMBA = _want_numba()


def njit(fn):
    """``numba.njit(cache=True)`` when enabled, else the function unchanged."""
    if not USE_NUMBA:
        return fn
    import numba

    return numba.njit(cache=True)(fn)
