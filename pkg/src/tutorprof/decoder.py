"""Decode a clip's score series into the execution path it shows.

Pipeline per clip: smooth the scores with a one-second kernel, label
each frame by argmax, then search five action grammars in priority
order. The compound paths (default-font, column-window) are searched
before the simple paths that their spans would also satisfy, and every
matched span is blanked before the search continues, so a sub-pattern
can never fire inside an already-claimed region. The match with the
highest confidence becomes the prediction; if nothing matches, the
single strongest non-background frame decides.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .grammar import Match, Pattern, compile_pattern, find_leftmost, remove
from .score_model import CLASS_SYMBOLS, ScoreSeries, argmax_decode, rate_frames
from .smoothing import smooth


class ExecutionPath(enum.Enum):
    """The five recognized user action sequences."""

    ALPHA = "alpha"  # set font via the font window
    BETA = "beta"  # set the default font via the default-font window
    GAMMA = "gamma"  # set columns via the column dropdown
    DELTA = "delta"  # set columns via the column window
    EPSILON = "epsilon"  # set page number

    @classmethod
    def from_name(cls, name: str) -> "ExecutionPath":
        name = _GREEK_ALIASES.get(name, name)
        try:
            return cls(name)
        except ValueError:
            raise ValueError(f"unknown execution path {name!r}") from None


_GREEK_ALIASES = {
    "α": "alpha",
    "β": "beta",
    "γ": "gamma",
    "δ": "delta",
    "ε": "epsilon",
}


@dataclass(frozen=True)
class ActionGrammar:
    """A pattern template bound to a path, with its search priority."""

    path: ExecutionPath
    pattern_template: str  # "r" stands for one second of frames
    priority: int  # lower searches (and removes) earlier
    related_classes: frozenset[str]


#: Search order: compound paths strictly before the simple paths they
#: contain (default-font before font, column-window before dropdown);
#: the page-number path shares no classes and goes last.
GRAMMARS: tuple[ActionGrammar, ...] = (
    ActionGrammar(ExecutionPath.BETA, "f{r,}F{r,}f{0,r}", 0, frozenset("F")),
    ActionGrammar(ExecutionPath.ALPHA, "f{r,}", 1, frozenset("f")),
    ActionGrammar(ExecutionPath.DELTA, "c{r,}[^cC]{0,r}C{r,}", 2, frozenset("C")),
    ActionGrammar(ExecutionPath.GAMMA, "c{r,}", 3, frozenset("c")),
    ActionGrammar(ExecutionPath.EPSILON, "p{r,}", 4, frozenset("p")),
)

#: Strongest-class fallback: each non-background class maps to the path
#: it indicates. Background belongs to no path.
CLASS_TO_PATH: dict[str, ExecutionPath] = {
    "f": ExecutionPath.ALPHA,
    "F": ExecutionPath.BETA,
    "c": ExecutionPath.GAMMA,
    "C": ExecutionPath.DELTA,
    "p": ExecutionPath.EPSILON,
}


@dataclass(frozen=True)
class PathPrediction:
    """Predicted execution path for one clip."""

    path: ExecutionPath
    match: Match | None  # None when produced by the fallback rule
    confidence: float
    video_id: str


@lru_cache(maxsize=None)
def _compiled(template: str, rate: int) -> Pattern:
    return compile_pattern(template.replace("r", str(rate)))


def decode_clip(series: ScoreSeries) -> PathPrediction:
    """Predict the execution path shown by one clip.

    Raises ``ValueError`` on an empty series. Confidence of a grammar
    match is the mean original score of each matched frame's decoded
    class, so clean one-hot input yields confidence 1.0 exactly.
    """
    if len(series) == 0:
        raise ValueError("cannot decode an empty series")
    rate = rate_frames(series.fps)
    smoothed = smooth(series)
    symbols = argmax_decode(smoothed)
    codes = symbols.codes
    raw = series.scores

    best: PathPrediction | None = None
    current = symbols
    for grammar in GRAMMARS:
        pattern = _compiled(grammar.pattern_template, rate)
        pos = 0
        while (m := find_leftmost(pattern, current, pos)) is not None:
            idx = np.arange(m.start, m.end)
            confidence = float(raw[idx, codes[idx]].mean())
            if best is None or confidence > best.confidence:
                best = PathPrediction(grammar.path, m, confidence, series.video_id)
            current = remove(current, m)
            pos = m.end
    if best is None:
        return fallback_path(series)
    return best


def fallback_path(series: ScoreSeries) -> PathPrediction:
    """Strongest non-background frame decides when no grammar matched.

    Uses smoothed scores; ties break toward the earliest frame, then
    the lowest class index.
    """
    if len(series) == 0:
        raise ValueError("cannot decode an empty series")
    scores = smooth(series).scores[:, 1:]  # drop background
    flat = int(np.argmax(scores))
    frame, cls = divmod(flat, scores.shape[1])
    symbol = CLASS_SYMBOLS[cls + 1]
    return PathPrediction(
        path=CLASS_TO_PATH[symbol],
        match=None,
        confidence=float(scores[frame, cls]),
        video_id=series.video_id,
    )
