"""Data model for per-frame classifier confidence series.

A score series holds one softmax confidence vector per video frame over
the six UI-state classes. The class ordering is fixed everywhere:

    index 0  b  background
    index 1  f  font window
    index 2  F  default-font window
    index 3  c  column dropdown
    index 4  C  column window
    index 5  p  page-number dropdown

Score files are JSON (see ``parse_score_file``) and carry the class
ordering explicitly so a column swap can never go unnoticed.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

CLASS_SYMBOLS: tuple[str, ...] = ("b", "f", "F", "c", "C", "p")
N_CLASSES = len(CLASS_SYMBOLS)
CLASS_INDEX: dict[str, int] = {s: i for i, s in enumerate(CLASS_SYMBOLS)}

CLASS_NAMES: dict[str, str] = {
    "b": "background",
    "f": "font window",
    "F": "default-font window",
    "c": "column dropdown",
    "C": "column window",
    "p": "page-number dropdown",
}

#: Marker for frames blanked out after a grammar match; never produced
#: by decoding itself.
SENTINEL = -1
SENTINEL_CHAR = "·"

#: Absolute tolerance for the row-sums-to-one softmax check. Float32
#: classifier outputs round-trip within this.
SIMPLEX_TOL = 1e-6


class ScoreFileError(ValueError):
    """Raised when a score file violates the wire format."""


def _round_half_up(x: float) -> int:
    # round() is banker's rounding; frame counts use plain half-up
    return int(math.floor(x + 0.5))


def rate_frames(fps: float) -> int:
    """The integer number of frames spanning one second, at least 1."""
    return max(1, _round_half_up(fps))


@dataclass(frozen=True, eq=False)
class ScoreSeries:
    """Immutable per-frame confidence series for one video clip."""

    video_id: str
    fps: float
    scores: np.ndarray  # (n_frames, 6) float64, each row on the simplex

    def __post_init__(self) -> None:
        if not (math.isfinite(self.fps) and self.fps > 0):
            raise ScoreFileError(f"fps must be positive, got {self.fps}")
        scores = np.asarray(self.scores, dtype=np.float64)
        if scores.ndim != 2 or scores.shape[1] != N_CLASSES:
            raise ScoreFileError(
                f"scores must have shape (n, {N_CLASSES}), got {scores.shape}"
            )
        _check_rows(scores)
        scores = np.ascontiguousarray(scores)
        scores.flags.writeable = False
        object.__setattr__(self, "scores", scores)

    def __len__(self) -> int:
        return self.scores.shape[0]

    @property
    def n_frames(self) -> int:
        return self.scores.shape[0]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ScoreSeries):
            return NotImplemented
        return (
            self.video_id == other.video_id
            and self.fps == other.fps
            and np.array_equal(self.scores, other.scores)
        )

    def __hash__(self) -> int:
        return hash((self.video_id, self.fps, self.scores.shape))


def _check_rows(scores: np.ndarray) -> None:
    if scores.size == 0:
        return
    finite = np.isfinite(scores).all(axis=1)
    if not finite.all():
        i = int(np.flatnonzero(~finite)[0])
        raise ScoreFileError(f"row {i} contains a non-finite value")
    in_range = ((scores >= 0.0) & (scores <= 1.0)).all(axis=1)
    if not in_range.all():
        i = int(np.flatnonzero(~in_range)[0])
        raise ScoreFileError(f"row {i} has a value outside [0, 1]")
    sums = scores.sum(axis=1)
    bad = np.abs(sums - 1.0) > SIMPLEX_TOL
    if bad.any():
        i = int(np.flatnonzero(bad)[0])
        raise ScoreFileError(f"row {i} sums to {sums[i]:g}")


@dataclass(frozen=True, eq=False)
class SymbolString:
    """Per-frame class labels as an int8 code array.

    Codes 0..5 index ``CLASS_SYMBOLS``; ``SENTINEL`` (-1) marks frames
    removed by a grammar match. Length always equals the frame count of
    the series it was decoded from.
    """

    codes: np.ndarray

    def __post_init__(self) -> None:
        codes = np.asarray(self.codes, dtype=np.int8)
        if codes.ndim != 1:
            raise ValueError("symbol codes must be one-dimensional")
        if codes.size and (codes.min() < SENTINEL or codes.max() >= N_CLASSES):
            raise ValueError("symbol code out of range")
        codes = np.ascontiguousarray(codes)
        codes.flags.writeable = False
        object.__setattr__(self, "codes", codes)

    @classmethod
    def from_text(cls, text: str) -> "SymbolString":
        codes = np.empty(len(text), dtype=np.int8)
        for i, ch in enumerate(text):
            if ch == SENTINEL_CHAR:
                codes[i] = SENTINEL
            elif ch in CLASS_INDEX:
                codes[i] = CLASS_INDEX[ch]
            else:
                raise ValueError(f"unknown symbol {ch!r} at position {i}")
        return cls(codes)

    def to_text(self) -> str:
        return "".join(
            SENTINEL_CHAR if c == SENTINEL else CLASS_SYMBOLS[c] for c in self.codes
        )

    def __len__(self) -> int:
        return self.codes.shape[0]

    def __str__(self) -> str:
        return self.to_text()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SymbolString):
            return NotImplemented
        return np.array_equal(self.codes, other.codes)

    def __hash__(self) -> int:
        return hash(self.to_text())


def parse_score_file(data: bytes | str) -> ScoreSeries:
    """Parse and validate a JSON score file.

    The format is ``{"video_id": str, "fps": number, "classes":
    ["b","f","F","c","C","p"], "scores": [[6 numbers], ...]}``. Any
    deviation (wrong class ordering, rows off the simplex, non-positive
    fps) raises ``ScoreFileError`` naming the offending row.
    """
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ScoreFileError(f"score file is not UTF-8: {exc}") from exc
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise ScoreFileError(f"malformed JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ScoreFileError("top-level value must be an object")
    for key in ("video_id", "fps", "classes", "scores"):
        if key not in doc:
            raise ScoreFileError(f"missing key {key!r}")
    if not isinstance(doc["video_id"], str):
        raise ScoreFileError("video_id must be a string")
    if not isinstance(doc["fps"], (int, float)) or isinstance(doc["fps"], bool):
        raise ScoreFileError("fps must be a number")
    if list(doc["classes"]) != list(CLASS_SYMBOLS):
        raise ScoreFileError(
            f"classes must be {list(CLASS_SYMBOLS)}, got {doc['classes']}"
        )
    rows = doc["scores"]
    if not isinstance(rows, list):
        raise ScoreFileError("scores must be a list of rows")
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != N_CLASSES:
            raise ScoreFileError(f"row {i} must have {N_CLASSES} entries")
        for v in row:
            if not isinstance(v, (int, float)) or isinstance(v, bool):
                raise ScoreFileError(f"row {i} has a non-numeric entry")
    scores = np.asarray(rows, dtype=np.float64).reshape(len(rows), N_CLASSES)
    return ScoreSeries(video_id=doc["video_id"], fps=float(doc["fps"]), scores=scores)


def serialize_score_series(series: ScoreSeries) -> str:
    """Serialize to the JSON score format; round-trips bit-exactly."""
    doc = {
        "video_id": series.video_id,
        "fps": series.fps,
        "classes": list(CLASS_SYMBOLS),
        "scores": [[float(v) for v in row] for row in series.scores],
    }
    return json.dumps(doc)


def argmax_decode(series: ScoreSeries) -> SymbolString:
    """Label each frame with its highest-confidence class.

    Ties break toward the lowest class index, i.e. background first.
    """
    if len(series) == 0:
        return SymbolString(np.empty(0, dtype=np.int8))
    return SymbolString(np.argmax(series.scores, axis=1).astype(np.int8))
