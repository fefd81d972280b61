"""Sliding-window average smoothing of confidence series.

Scores are smoothed before decoding with a one-second-wide mean kernel.
The window is forced odd so it centers on the output frame, and shrinks
at the clip edges (the mean runs over the frames actually present, no
padding). Averaging simplex rows keeps them on the simplex, so smoothed
series stay valid score series.
"""

from __future__ import annotations

import numpy as np

from . import accel
from .score_model import ScoreSeries, _round_half_up


def window_width(fps: float, window_seconds: float = 1.0) -> int:
    """Odd window width in frames for the given rate and duration."""
    if window_seconds <= 0:
        raise ValueError(f"window_seconds must be positive, got {window_seconds}")
    w = max(1, _round_half_up(fps * window_seconds))
    if w % 2 == 0:
        w += 1
    return w


def _smooth_loop(scores: np.ndarray, w: int) -> np.ndarray:
    """Truncated centered mean, plain loops (numba kernel)."""
    n, k = scores.shape
    half = w // 2
    out = np.empty((n, k), np.float64)
    for i in range(n):
        lo = i - half
        if lo < 0:
            lo = 0
        hi = i + half + 1
        if hi > n:
            hi = n
        span = hi - lo
        for c in range(k):
            acc = 0.0
            for j in range(lo, hi):
                acc += scores[j, c]
            out[i, c] = acc / span
    return out


_smooth_loop_jit = accel.jit(_smooth_loop)


def _smooth_numpy(scores: np.ndarray, w: int) -> np.ndarray:
    """Truncated centered mean via a strided view (numpy fallback)."""
    n = scores.shape[0]
    half = w // 2
    out = np.empty_like(scores)
    if n >= w:
        windows = np.lib.stride_tricks.sliding_window_view(scores, w, axis=0)
        out[half : n - half] = windows.mean(axis=-1)
        edges = list(range(half)) + list(range(n - half, n))
    else:
        edges = list(range(n))
    for i in edges:
        out[i] = scores[max(0, i - half) : i + half + 1].mean(axis=0)
    return out


def smooth_scores(scores: np.ndarray, w: int) -> np.ndarray:
    """Smooth a raw (n, 6) score array with an odd window of ``w`` frames."""
    if w == 1 or scores.shape[0] <= 1:
        return scores.copy()
    if accel.NUMBA_ENABLED:
        return _smooth_loop_jit(scores, w)
    return _smooth_numpy(scores, w)


def smooth(series: ScoreSeries, window_seconds: float = 1.0) -> ScoreSeries:
    """Average-smooth a score series with a window of ``window_seconds``."""
    w = window_width(series.fps, window_seconds)
    if w == 1 or len(series) <= 1:
        return series
    return ScoreSeries(
        video_id=series.video_id,
        fps=series.fps,
        scores=smooth_scores(series.scores, w),
    )
