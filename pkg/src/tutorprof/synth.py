"""Synthetic ground-truth clips for tests and desk-scale evaluation.

A clip is planned as background padding around class runs that realize
the target path's grammar at the clip's frame rate (run lengths drawn
from [r, 3r], the column-window gap from [0, r] using background
frames). Symbols become near-one-hot score rows, then each frame is
independently corrupted with the given probability by swapping its top
score with a uniformly random other class, which is exactly the one-off
misclassification pattern smoothing plus the one-second run requirement
are meant to absorb.
"""

from __future__ import annotations

import numpy as np

from .decoder import ExecutionPath
from .score_model import CLASS_INDEX, N_CLASSES, ScoreSeries, rate_frames

#: Confidence mass placed on the planned class; the rest spreads evenly.
MAIN_MASS = 0.95
_OFF_MASS = (1.0 - MAIN_MASS) / (N_CLASSES - 1)

_B = CLASS_INDEX["b"]
_F, _FF = CLASS_INDEX["f"], CLASS_INDEX["F"]
_C, _CC = CLASS_INDEX["c"], CLASS_INDEX["C"]
_P = CLASS_INDEX["p"]


def min_duration(fps: float) -> int:
    """Fewest frames that can embed any path's grammar at this rate."""
    return 4 * rate_frames(fps) + 2


def _draw(rng: np.random.Generator, lo: int, hi: int) -> int:
    if hi < lo:
        raise ValueError("run budget exhausted")  # unreachable given min_duration
    return int(rng.integers(lo, hi + 1))


def _plan_runs(
    path: ExecutionPath, r: int, budget: int, rng: np.random.Generator
) -> list[tuple[int, int]]:
    """(class_code, length) runs realizing the path within ``budget``."""
    if path is ExecutionPath.ALPHA:
        return [(_F, _draw(rng, r, min(3 * r, budget)))]
    if path is ExecutionPath.GAMMA:
        return [(_C, _draw(rng, r, min(3 * r, budget)))]
    if path is ExecutionPath.EPSILON:
        return [(_P, _draw(rng, r, min(3 * r, budget)))]
    if path is ExecutionPath.BETA:
        first = _draw(rng, r, min(3 * r, budget - r))
        second = _draw(rng, r, min(3 * r, budget - first))
        trailing = _draw(rng, 0, min(r, budget - first - second))
        runs = [(_F, first), (_FF, second)]
        if trailing:
            runs.append((_F, trailing))
        return runs
    if path is ExecutionPath.DELTA:
        first = _draw(rng, r, min(3 * r, budget - r))
        gap = _draw(rng, 0, min(r, budget - first - r))
        second = _draw(rng, r, min(3 * r, budget - first - gap))
        runs = [(_C, first)]
        if gap:
            runs.append((_B, gap))  # background gap satisfies the negated class
        runs.append((_CC, second))
        return runs
    raise ValueError(f"unknown path {path!r}")


def generate_clip(
    path: ExecutionPath,
    fps: float,
    duration_frames: int,
    noise: float = 0.0,
    seed: int = 0,
) -> tuple[ScoreSeries, ExecutionPath]:
    """Build one synthetic clip with known ground truth.

    Deterministic for a given argument tuple. ``noise`` is the per-frame
    argmax corruption probability in [0, 0.5).
    """
    if not 0.0 <= noise < 0.5:
        raise ValueError(f"noise must be within [0, 0.5), got {noise}")
    r = rate_frames(fps)
    needed = min_duration(fps)
    if duration_frames < needed:
        raise ValueError(
            f"duration_frames {duration_frames} too short for {path.value} "
            f"at {fps} fps; need at least {needed}"
        )
    rng = np.random.default_rng(seed)

    budget = duration_frames - 2  # one background frame each side, minimum
    runs = _plan_runs(path, r, budget, rng)
    content = sum(length for _, length in runs)
    lead = _draw(rng, 1, duration_frames - content - 1)

    codes = np.full(duration_frames, _B, dtype=np.int8)
    pos = lead
    for cls, length in runs:
        codes[pos : pos + length] = cls
        pos += length

    scores = np.full((duration_frames, N_CLASSES), _OFF_MASS, dtype=np.float64)
    scores[np.arange(duration_frames), codes] = MAIN_MASS

    if noise > 0.0:
        corrupt = rng.random(duration_frames) < noise
        for i in np.flatnonzero(corrupt):
            true_cls = codes[i]
            k = int(rng.integers(0, N_CLASSES - 1))
            other = k if k < true_cls else k + 1
            scores[i, true_cls], scores[i, other] = (
                scores[i, other],
                scores[i, true_cls],
            )

    series = ScoreSeries(
        video_id=f"synth-{path.value}-{seed}",
        fps=float(fps),
        scores=scores,
    )
    return series, path
