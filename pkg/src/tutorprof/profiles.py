"""Aggregate decoded paths into a popularity-weighted usage profile.

Popularity comes from per-video metadata (view counts, optional rating
in [0, 1]). How views and rating should combine is a modelling choice,
so the weighting scheme is explicit and recorded in the output:
"views" (the default), "views-times-rating" (missing rating counts as
1), or "uniform" (one vote per video).
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Iterable, Mapping

from .decoder import ExecutionPath, PathPrediction

SCHEMES = ("views", "views-times-rating", "uniform")


class ProfileError(ValueError):
    """Raised for inconsistent profile inputs."""


@dataclass(frozen=True)
class VideoMeta:
    video_id: str
    views: int
    rating: float | None = None

    def __post_init__(self) -> None:
        if self.views < 0:
            raise ProfileError(f"views must be non-negative, got {self.views}")
        if self.rating is not None and not 0.0 <= self.rating <= 1.0:
            raise ProfileError(f"rating must be within [0, 1], got {self.rating}")


@dataclass(frozen=True)
class UsageProfile:
    """Normalized path weights plus per-path supporting video counts."""

    scheme: str
    weights: dict[ExecutionPath, float]
    support: dict[ExecutionPath, int]

    def to_dict(self) -> dict:
        return {
            "scheme": self.scheme,
            "weights": {p.value: self.weights[p] for p in ExecutionPath},
            "support": {p.value: self.support[p] for p in ExecutionPath},
        }


def video_weight(meta: VideoMeta, scheme: str) -> float:
    if scheme == "views":
        return float(meta.views)
    if scheme == "views-times-rating":
        rating = 1.0 if meta.rating is None else meta.rating
        return float(meta.views) * rating
    if scheme == "uniform":
        return 1.0
    raise ProfileError(f"unknown scheme {scheme!r}, expected one of {SCHEMES}")


def build_profile(
    predictions: Iterable[PathPrediction],
    meta: Mapping[str, VideoMeta],
    scheme: str = "views",
) -> UsageProfile:
    """Weight each video's predicted path and normalize over all paths."""
    if scheme not in SCHEMES:
        raise ProfileError(f"unknown scheme {scheme!r}, expected one of {SCHEMES}")
    totals = {path: 0.0 for path in ExecutionPath}
    support = {path: 0 for path in ExecutionPath}
    grand_total = 0.0
    seen_any = False
    for pred in predictions:
        seen_any = True
        if pred.video_id not in meta:
            raise ProfileError(f"no metadata for video {pred.video_id!r}")
        w = video_weight(meta[pred.video_id], scheme)
        totals[pred.path] += w
        support[pred.path] += 1
        grand_total += w
    if not seen_any:
        raise ProfileError("no predictions to profile")
    if grand_total <= 0.0 or not math.isfinite(grand_total):
        raise ProfileError(
            f"total weight is {grand_total:g} under scheme {scheme!r}; "
            "profile weights are undefined"
        )
    weights = {path: totals[path] / grand_total for path in ExecutionPath}
    return UsageProfile(scheme=scheme, weights=weights, support=support)


def load_meta_csv(text: str) -> dict[str, VideoMeta]:
    """Parse metadata CSV with columns video_id, views, rating.

    The rating column may be blank. A header row is required.
    """
    reader = csv.DictReader(io.StringIO(text))
    required = {"video_id", "views", "rating"}
    if reader.fieldnames is None or not required.issubset(reader.fieldnames):
        raise ProfileError(
            f"metadata CSV needs columns {sorted(required)}, "
            f"got {reader.fieldnames}"
        )
    out: dict[str, VideoMeta] = {}
    for lineno, row in enumerate(reader, start=2):
        video_id = row["video_id"]
        try:
            views = int(row["views"])
        except (TypeError, ValueError):
            raise ProfileError(
                f"line {lineno}: bad views value {row['views']!r}"
            ) from None
        rating_text = (row["rating"] or "").strip()
        if rating_text:
            try:
                rating: float | None = float(rating_text)
            except ValueError:
                raise ProfileError(
                    f"line {lineno}: bad rating value {rating_text!r}"
                ) from None
        else:
            rating = None
        out[video_id] = VideoMeta(video_id=video_id, views=views, rating=rating)
    return out
