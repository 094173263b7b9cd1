"""Regularized linear discriminant analysis with a pooled covariance.

The pooled covariance is inverted through its eigendecomposition, dropping
eigenvalues below 1e-10 of the largest, so near-singular covariances (common
when the feature count approaches the sample count) degrade to a pseudo-
inverse instead of blowing up.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .dataset import LabeledDataset
from .errors import DataError, TrainingError

EIGENVALUE_CUTOFF_RATIO = 1e-10


@dataclass(frozen=True)
class LdaSpec:
    """Fit configuration; gamma in [0, 1] shrinks toward the diagonal."""

    gamma: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.gamma <= 1.0:
            raise DataError(f"gamma must be in [0, 1], got {self.gamma}")

    def fit(self, data: LabeledDataset) -> "LdaModel":
        return fit_lda(data, self.gamma)


@dataclass(frozen=True)
class LdaModel:
    class_means: np.ndarray          # (K, D)
    pooled_precision: np.ndarray     # (K-independent) pseudo-inverse of pooled covariance
    log_priors: np.ndarray           # (K,)
    gamma: float
    class_names: tuple[str, ...]
    # cached linear form: score_k(x) = x @ coef[k] + intercept[k]
    coef: np.ndarray = field(init=False)
    intercept: np.ndarray = field(init=False)

    def __post_init__(self):
        coef = self.pooled_precision @ self.class_means.T          # (D, K)
        intercept = (
            -0.5 * np.einsum("kd,dk->k", self.class_means, coef) + self.log_priors
        )
        object.__setattr__(self, "coef", coef)
        object.__setattr__(self, "intercept", intercept)

    @property
    def n_features(self) -> int:
        return self.class_means.shape[1]

    @property
    def n_classes(self) -> int:
        return self.class_means.shape[0]

    def scores_matrix(self, x: np.ndarray) -> np.ndarray:
        """Posterior probabilities, one row per input row."""
        x = np.atleast_2d(np.asarray(x, dtype=np.float64))
        if x.shape[1] != self.n_features:
            raise DataError(f"expected {self.n_features} features, got {x.shape[1]}")
        discriminants = x @ self.coef + self.intercept
        return _softmax_rows(discriminants)

    def predict_matrix(self, x: np.ndarray) -> np.ndarray:
        return np.argmax(self.scores_matrix(x), axis=1)


def _softmax_rows(values: np.ndarray) -> np.ndarray:
    shifted = values - values.max(axis=1, keepdims=True)
    expd = np.exp(shifted)
    return expd / expd.sum(axis=1, keepdims=True)


def fit_lda(data: LabeledDataset, gamma: float = 0.0) -> LdaModel:
    """Fit class means, priors and the regularized pooled covariance inverse."""
    if not 0.0 <= gamma <= 1.0:
        raise DataError(f"gamma must be in [0, 1], got {gamma}")
    k = data.n_classes
    if k < 2:
        raise TrainingError("discriminant analysis needs at least 2 classes")
    counts = data.class_counts()
    small = [data.class_names[i] for i in range(k) if counts[i] < 2]
    if small:
        raise TrainingError(f"classes with fewer than 2 samples: {small}")

    x = data.features.values
    n, d = x.shape
    means = np.empty((k, d))
    scatter = np.zeros((d, d))
    for c in range(k):
        rows = x[data.labels == c]
        means[c] = rows.mean(axis=0)
        centered = rows - means[c]
        scatter += centered.T @ centered
    pooled = scatter / (n - k)

    if gamma > 0.0:
        pooled = (1.0 - gamma) * pooled + gamma * np.diag(np.diag(pooled))

    precision = _eigh_pseudo_inverse(pooled)
    priors = counts / n
    return LdaModel(means, precision, np.log(priors), gamma, data.class_names)


def _eigh_pseudo_inverse(sym: np.ndarray) -> np.ndarray:
    eigvals, eigvecs = np.linalg.eigh(sym)
    top = eigvals.max() if eigvals.size else 0.0
    if top <= 0.0:
        return np.zeros_like(sym)
    cutoff = EIGENVALUE_CUTOFF_RATIO * top
    inv = np.where(eigvals >= cutoff, 1.0 / np.where(eigvals >= cutoff, eigvals, 1.0), 0.0)
    result = (eigvecs * inv) @ eigvecs.T
    # Exact symmetry keeps downstream quadratic forms well behaved.
    return (result + result.T) / 2.0


def lda_scores(model: LdaModel, x: np.ndarray) -> np.ndarray:
    """Posterior probabilities for a single feature vector."""
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1:
        raise DataError("lda_scores expects a single vector")
    return model.scores_matrix(x[None, :])[0]
