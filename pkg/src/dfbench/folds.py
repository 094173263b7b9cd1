"""Stratified fold assignment for cross-validation."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DataError
from .rng import SeededRng


@dataclass(frozen=True)
class FoldPlan:
    k: int
    assignment: np.ndarray  # fold index per sample
    seed: int

    def test_rows(self, fold: int) -> np.ndarray:
        return np.flatnonzero(self.assignment == fold)

    def train_rows(self, fold: int) -> np.ndarray:
        return np.flatnonzero(self.assignment != fold)


def stratified_folds(labels, k: int = 5, seed: int = 0) -> FoldPlan:
    """Shuffle within each class, then deal samples round-robin to folds.

    Per-class fold sizes differ by at most one, so class balance carries over
    to every fold.
    """
    labels = np.asarray(labels, dtype=np.int64)
    if k < 2:
        raise DataError(f"need at least 2 folds, got {k}")
    counts = np.bincount(labels)
    for cls, count in enumerate(counts):
        if 0 < count < k:
            raise DataError(f"class {cls} has {count} samples, fewer than {k} folds")
    assignment = np.empty(labels.shape[0], dtype=np.int64)
    rng = SeededRng(seed)
    for cls in range(counts.shape[0]):
        rows = np.flatnonzero(labels == cls)
        if rows.size == 0:
            continue
        shuffled = rows[rng.substream(cls).permutation(rows.size)]
        assignment[shuffled] = np.arange(shuffled.size) % k
    return FoldPlan(k, assignment, seed)
