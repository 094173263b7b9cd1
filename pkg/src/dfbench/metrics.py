"""Confusion matrices and the derived classification metrics.

Per-class metrics come from the one-vs-rest reduction of a multiclass
confusion matrix. Zero-denominator metrics are reported as None rather than
silently coerced to 0, so macro summaries cannot be quietly corrupted.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import stats

from .errors import DataError


@dataclass(frozen=True)
class ConfusionMatrix:
    """Rows are true classes, columns predicted classes."""

    counts: np.ndarray
    class_names: tuple[str, ...]

    def __post_init__(self):
        counts = np.asarray(self.counts, dtype=np.int64)
        object.__setattr__(self, "counts", counts)
        object.__setattr__(self, "class_names", tuple(self.class_names))
        k = len(self.class_names)
        if counts.shape != (k, k):
            raise DataError(f"confusion matrix shape {counts.shape} for {k} classes")
        if (counts < 0).any():
            raise DataError("confusion matrix has negative counts")

    @classmethod
    def from_predictions(cls, y_true, y_pred, class_names) -> "ConfusionMatrix":
        k = len(class_names)
        counts = np.zeros((k, k), dtype=np.int64)
        for t, p in zip(np.asarray(y_true), np.asarray(y_pred)):
            counts[int(t), int(p)] += 1
        return cls(counts, tuple(class_names))

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    @property
    def accuracy(self) -> float:
        return float(np.trace(self.counts)) / self.total

    def add(self, other: "ConfusionMatrix") -> "ConfusionMatrix":
        if self.class_names != other.class_names:
            raise DataError("cannot add confusion matrices over different classes")
        return ConfusionMatrix(self.counts + other.counts, self.class_names)


@dataclass(frozen=True)
class ClassMetrics:
    class_name: str
    tp: int
    fp: int
    fn: int
    tn: int
    precision: float | None
    recall: float | None
    specificity: float | None
    f_score: float | None


def _ratio(num: int, den: int) -> float | None:
    return num / den if den > 0 else None


def f_score_from_precision_recall(precision: float, recall: float) -> float | None:
    """Harmonic mean, scale-invariant: works on fractions or percents alike."""
    if precision + recall == 0:
        return None
    return 2.0 * precision * recall / (precision + recall)


def metrics_from_cm(cm: ConfusionMatrix) -> tuple[list[ClassMetrics], float]:
    """One-vs-rest per-class metrics plus overall accuracy."""
    if cm.total == 0:
        raise DataError("empty confusion matrix")
    out: list[ClassMetrics] = []
    counts = cm.counts
    total = cm.total
    for k, name in enumerate(cm.class_names):
        tp = int(counts[k, k])
        fn = int(counts[k, :].sum()) - tp
        fp = int(counts[:, k].sum()) - tp
        tn = total - tp - fn - fp
        precision = _ratio(tp, tp + fp)
        recall = _ratio(tp, tp + fn)
        specificity = _ratio(tn, tn + fp)
        if precision is None or recall is None:
            f = None
        else:
            f = f_score_from_precision_recall(precision, recall)
        out.append(ClassMetrics(name, tp, fp, fn, tn, precision, recall, specificity, f))
    return out, cm.accuracy


def accuracy_ci(per_fold_accuracies, level: float = 0.95) -> float:
    """Half-width of the t-interval over fold accuracies."""
    acc = np.asarray(per_fold_accuracies, dtype=np.float64)
    k = acc.shape[0]
    if k < 2:
        raise DataError("confidence interval needs at least 2 folds")
    sd = acc.std(ddof=1)
    quantile = stats.t.ppf(0.5 + level / 2.0, df=k - 1)
    return float(quantile * sd / np.sqrt(k))


def roc_auc(scores, positives) -> float:
    """Rank-based AUC; tied scores contribute half a concordant pair."""
    scores = np.asarray(scores, dtype=np.float64)
    flags = np.asarray(positives).astype(bool)
    n_pos = int(flags.sum())
    n_neg = flags.size - n_pos
    if n_pos == 0 or n_neg == 0:
        raise DataError("AUC needs both positive and negative samples")
    ranks = stats.rankdata(scores)  # midranks handle ties
    rank_sum = ranks[flags].sum()
    u = rank_sum - n_pos * (n_pos + 1) / 2.0
    return float(u / (n_pos * n_neg))
