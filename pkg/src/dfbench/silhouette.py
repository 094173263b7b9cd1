"""Silhouette analysis of labeled feature vectors.

For each sample, a is the mean distance to its own class (self excluded) and
b the smallest mean distance to any other class; the silhouette value is
(b - a) / max(a, b). Samples in singleton classes get 0 by convention.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DataError


@dataclass(frozen=True)
class SilhouetteReport:
    values: np.ndarray          # s(i) per sample
    intra: np.ndarray           # a(i)
    nearest_other: np.ndarray   # b(i)
    class_means: np.ndarray     # mean s per class
    class_names: tuple[str, ...]


def pairwise_distances(x: np.ndarray) -> np.ndarray:
    """Euclidean distance matrix between all rows."""
    sq = np.sum(x * x, axis=1)
    d2 = np.maximum(sq[:, None] + sq[None, :] - 2.0 * (x @ x.T), 0.0)
    np.fill_diagonal(d2, 0.0)
    return np.sqrt(d2)


def silhouette(
    features=None, labels=None, distances=None, class_names=None
) -> SilhouetteReport:
    """Per-sample and per-class silhouette from features or a distance matrix."""
    if labels is None:
        raise DataError("labels are required")
    labels = np.asarray(labels, dtype=np.int64)
    if distances is None:
        if features is None:
            raise DataError("provide features or a precomputed distance matrix")
        x = np.asarray(features, dtype=np.float64)
        distances = pairwise_distances(x)
    else:
        distances = np.asarray(distances, dtype=np.float64)
    n = labels.shape[0]
    if distances.shape != (n, n):
        raise DataError(f"distance matrix shape {distances.shape} for {n} samples")
    k = int(labels.max()) + 1
    if class_names is None:
        class_names = tuple(str(c) for c in range(k))
    if len(np.unique(labels)) < 2:
        raise DataError("silhouette needs at least 2 classes")

    members = [np.flatnonzero(labels == c) for c in range(k)]
    sizes = np.array([m.size for m in members])

    # mean distance from every sample to every class, via column sums
    class_sums = np.stack([distances[:, m].sum(axis=1) for m in members], axis=1)

    intra = np.zeros(n)
    nearest = np.zeros(n)
    values = np.zeros(n)
    for i in range(n):
        c = labels[i]
        if sizes[c] > 1:
            intra[i] = class_sums[i, c] / (sizes[c] - 1)
        other = [
            class_sums[i, oc] / sizes[oc]
            for oc in range(k)
            if oc != c and sizes[oc] > 0
        ]
        nearest[i] = min(other)
        if sizes[c] > 1:
            denom = max(intra[i], nearest[i])
            values[i] = (nearest[i] - intra[i]) / denom if denom > 0 else 0.0
        # singleton classes keep s = 0

    class_means = np.array(
        [values[m].mean() if m.size else 0.0 for m in members]
    )
    return SilhouetteReport(values, intra, nearest, class_means, tuple(class_names))
