"""Evaluation: confusion matrices, precision/recall/F1, interpolated AP.

Average precision follows the eleven-point interpolation convention:
sweep the ranked predictions, and at each recall level in {0.0, 0.1,
..., 1.0} take the maximum precision observed at that recall or higher;
AP is the mean over the eleven levels, with levels beyond the reached
recall contributing zero. Undefined ratios (0/0) are reported as None,
never silently as zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

RECALL_LEVELS: tuple[float, ...] = tuple(i / 10 for i in range(11))


@dataclass(frozen=True)
class ClassMetrics:
    precision: float | None
    recall: float | None
    f1: float | None


@dataclass(frozen=True, eq=False)
class ConfusionMatrix:
    """Square count grid; rows are ground truth, columns predictions."""

    labels: tuple[str, ...]
    counts: np.ndarray

    def __post_init__(self) -> None:
        counts = np.asarray(self.counts, dtype=np.int64)
        k = len(self.labels)
        if counts.shape != (k, k):
            raise ValueError(
                f"counts must be {k}x{k} for {k} labels, got {counts.shape}"
            )
        if (counts < 0).any():
            raise ValueError("counts must be non-negative")
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "counts", counts)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ConfusionMatrix):
            return NotImplemented
        return self.labels == other.labels and np.array_equal(
            self.counts, other.counts
        )


def accumulate(
    pairs: Iterable[tuple[str, str]], labels: Sequence[str]
) -> ConfusionMatrix:
    """Count (truth, predicted) pairs into a confusion matrix."""
    labels = tuple(labels)
    index = {lab: i for i, lab in enumerate(labels)}
    counts = np.zeros((len(labels), len(labels)), dtype=np.int64)
    for truth, predicted in pairs:
        if truth not in index:
            raise ValueError(f"unknown truth label {truth!r}")
        if predicted not in index:
            raise ValueError(f"unknown predicted label {predicted!r}")
        counts[index[truth], index[predicted]] += 1
    return ConfusionMatrix(labels, counts)


def precision_recall_f1(cm: ConfusionMatrix) -> dict[str, ClassMetrics]:
    """Per-class precision, recall and F1 (harmonic mean of P and R)."""
    row_sums = cm.counts.sum(axis=1)
    col_sums = cm.counts.sum(axis=0)
    out: dict[str, ClassMetrics] = {}
    for i, label in enumerate(cm.labels):
        diag = int(cm.counts[i, i])
        recall = diag / row_sums[i] if row_sums[i] > 0 else None
        precision = diag / col_sums[i] if col_sums[i] > 0 else None
        if precision is None or recall is None or precision + recall == 0:
            f1 = None
        else:
            f1 = 2 * precision * recall / (precision + recall)
        out[label] = ClassMetrics(precision, recall, f1)
    return out


@dataclass(frozen=True)
class RankedPredictionList:
    """Confidence-ranked predictions for one class.

    ``entries`` are (confidence, is_correct) in original emission order;
    ``positives_total`` is the number of ground-truth positives the
    recall denominator uses.
    """

    entries: tuple[tuple[float, bool], ...]
    positives_total: int

    def __post_init__(self) -> None:
        entries = tuple((float(c), bool(ok)) for c, ok in self.entries)
        object.__setattr__(self, "entries", entries)
        hits = sum(1 for _, ok in entries if ok)
        if self.positives_total < hits:
            raise ValueError(
                f"positives_total {self.positives_total} below hit count {hits}"
            )


def average_precision(ranked: RankedPredictionList) -> float:
    """Eleven-point interpolated average precision.

    Entries are sorted by descending confidence; equal confidences keep
    their input order.
    """
    if not ranked.entries:
        raise ValueError("no entries to rank")
    if ranked.positives_total == 0:
        raise ValueError("positives_total must be positive")
    order = sorted(range(len(ranked.entries)), key=lambda i: -ranked.entries[i][0])
    recalls: list[float] = []
    precisions: list[float] = []
    tp = 0
    for rank, i in enumerate(order, start=1):
        if ranked.entries[i][1]:
            tp += 1
        recalls.append(tp / ranked.positives_total)
        precisions.append(tp / rank)
    total = 0.0
    for level in RECALL_LEVELS:
        best = 0.0
        for r, p in zip(recalls, precisions):
            if r >= level and p > best:
                best = p
        total += best
    return total / len(RECALL_LEVELS)


def mean_average_precision(
    per_class: Sequence[RankedPredictionList | float],
) -> float:
    """Unweighted mean of per-class AP.

    Accepts ranked lists (AP is computed) or precomputed AP values in
    [0, 1], so published per-class figures can be averaged directly.
    """
    if len(per_class) == 0:
        raise ValueError("no classes given")
    values = [
        average_precision(x) if isinstance(x, RankedPredictionList) else float(x)
        for x in per_class
    ]
    return sum(values) / len(values)


def format_percent(value: float | None) -> str:
    """Render a ratio as the two-decimal percent used in result tables."""
    return "n/a" if value is None else f"{100.0 * value:.2f}"
