"""Compare the numba kernels against the NumPy/Python fallbacks.

Run with ``python benchmarks/bench_accel.py``. The same comparison can
be reproduced end-to-end by running any pipeline command with
``TUTORPROF_DISABLE_NUMBA=1`` in the environment.
"""

from __future__ import annotations

import time

import numpy as np

from tutorprof import accel
from tutorprof.grammar import _match_scan, _match_scan_jit, compile_pattern
from tutorprof.saliency import _select_loop, _select_loop_jit, _select_numpy
from tutorprof.smoothing import _smooth_loop, _smooth_loop_jit, _smooth_numpy


def timed(fn, *args, repeat=5):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def row(name, jit_s, fallback_s):
    speedup = fallback_s / jit_s if jit_s > 0 else float("inf")
    print(f"{name:<28} {jit_s * 1e3:>10.2f} ms {fallback_s * 1e3:>12.2f} ms {speedup:>8.1f}x")


def main():
    if not accel.NUMBA_ENABLED:
        print(
            "numba path is disabled (TUTORPROF_DISABLE_NUMBA or missing numba); "
            "nothing to compare"
        )
        return

    rng = np.random.default_rng(0)

    # smoothing: a 20k-frame clip at 30 fps (w = 31)
    raw = rng.random((20_000, 6))
    scores = raw / raw.sum(axis=1, keepdims=True)
    _smooth_loop_jit(scores, 31)  # compile
    row(
        "smooth 20k frames w=31",
        timed(_smooth_loop_jit, scores, 31),
        timed(_smooth_numpy, scores, 31),
    )

    # saliency: 400 frames of 240x320 video
    frames = rng.integers(0, 256, size=(400, 240, 320)).astype(np.float64)
    _select_loop_jit(frames[:2], 0.02)
    row(
        "saliency 400x240x320",
        timed(_select_loop_jit, frames, 0.02),
        timed(_select_numpy, frames, 0.02),
    )

    # grammar matching: worst case is a long string with no match
    pattern = compile_pattern("c{30,}[^cC]{0,30}C{30,}")
    codes = rng.choice(
        np.array([0, 3, 4], dtype=np.int8), size=6000, p=[0.5, 0.25, 0.25]
    )
    args = (codes, pattern._allow, pattern._lo, pattern._hi, 0)
    _match_scan_jit(*args)
    row(
        "match scan 6k frames",
        timed(_match_scan_jit, *args),
        timed(_match_scan, *args, repeat=1),
    )


if __name__ == "__main__":
    print(f"{'kernel':<28} {'numba':>13} {'fallback':>15} {'speedup':>8}")
    main()
