"""Numba acceleration toggle.

The hot kernels (window smoothing, salient-frame scanning, grammar
matching) are compiled with numba's ``@njit`` when available. Setting
``TUTORPROF_DISABLE_NUMBA=1`` in the environment forces the plain
NumPy/Python fallback paths instead; ``NUMBA_DISABLE_JIT`` is honoured
the same way. ``benchmarks/bench_accel.py`` compares the two paths.
"""

from __future__ import annotations

import os

ENV_FLAG = "TUTORPROF_DISABLE_NUMBA"


def _flag_set(name: str) -> bool:
    return os.environ.get(name, "").strip() not in ("", "0")


def _detect() -> bool:
    if _flag_set(ENV_FLAG) or _flag_set("NUMBA_DISABLE_JIT"):
        return False
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


NUMBA_ENABLED = _detect()

if NUMBA_ENABLED:
    from numba import njit as _njit

    def jit(func):
        """Compile ``func`` in nopython mode (cached across runs)."""
        return _njit(cache=True, nogil=True)(func)

else:

    def jit(func):
        """Fallback: return ``func`` unchanged."""
        return func
