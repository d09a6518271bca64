"""Optional numba acceleration.

Set ``CHANMETRIC_NUMBA=0`` in the environment before import to run every
kernel as plain numpy. Numba being absent has the same effect.
"""

from __future__ import annotations

import os

_flag = os.environ.get("CHANMETRIC_NUMBA", "1").strip().lower()
_requested = _flag not in ("0", "false", "no", "off")

try:
    if not _requested:
        raise ImportError
    from numba import njit as _numba_njit

    NUMBA_ENABLED = True
except ImportError:
    _numba_njit = None
    NUMBA_ENABLED = False


def kernel(func):
    """Compile ``func`` with ``numba.njit`` when enabled, else return it untouched."""
    if NUMBA_ENABLED:
        return _numba_njit(cache=True)(func)
    return func


def backend_name() -> str:
    return "numba" if NUMBA_ENABLED else "numpy"


__all__ = ["kernel", "NUMBA_ENABLED", "backend_name"]
