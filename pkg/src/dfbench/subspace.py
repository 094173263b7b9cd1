"""Random-subspace ensemble of discriminant classifiers.

Each member trains on a random subset of feature columns; ensemble scores are
the arithmetic mean of member posteriors. Member m draws its column subset
from substream m of the configured seed, so training order (or a parallel
schedule) can never change the model.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dataset import LabeledDataset
from .errors import DataError
from .lda import LdaModel, fit_lda
from .rng import SeededRng


@dataclass(frozen=True)
class SubspaceEnsembleSpec:
    n_learners: int = 30
    subspace_dim: int = 500
    seed: int = 0
    gamma: float = 0.0

    def __post_init__(self):
        if self.n_learners < 1:
            raise DataError(f"n_learners must be >= 1, got {self.n_learners}")
        if self.subspace_dim < 1:
            raise DataError(f"subspace_dim must be >= 1, got {self.subspace_dim}")

    def fit(self, data: LabeledDataset) -> "SubspaceEnsembleModel":
        return fit_subspace_ensemble(data, self)


@dataclass(frozen=True)
class SubspaceEnsembleModel:
    members: tuple[tuple[np.ndarray, LdaModel], ...]
    class_names: tuple[str, ...]
    n_features: int
    spec: SubspaceEnsembleSpec

    @property
    def n_classes(self) -> int:
        return len(self.class_names)

    def scores_matrix(self, x: np.ndarray) -> np.ndarray:
        x = np.atleast_2d(np.asarray(x, dtype=np.float64))
        if x.shape[1] != self.n_features:
            raise DataError(f"expected {self.n_features} features, got {x.shape[1]}")
        total = np.zeros((x.shape[0], self.n_classes))
        for columns, member in self.members:
            total += member.scores_matrix(x[:, columns])
        return total / len(self.members)

    def predict_matrix(self, x: np.ndarray) -> np.ndarray:
        return np.argmax(self.scores_matrix(x), axis=1)


def fit_subspace_ensemble(
    data: LabeledDataset, spec: SubspaceEnsembleSpec
) -> SubspaceEnsembleModel:
    d = data.n_features
    if spec.subspace_dim > d:
        raise DataError(f"subspace_dim {spec.subspace_dim} exceeds feature count {d}")
    rng = SeededRng(spec.seed)
    members = []
    for m in range(spec.n_learners):
        columns = rng.substream(m).subset(d, spec.subspace_dim)
        member_data = LabeledDataset(
            _column_view(data, columns), data.labels, data.class_names
        )
        members.append((columns, fit_lda(member_data, spec.gamma)))
    return SubspaceEnsembleModel(tuple(members), data.class_names, d, spec)


def _column_view(data: LabeledDataset, columns: np.ndarray):
    from .features import FeatureMatrix

    return FeatureMatrix(data.features.values[:, columns], data.features.sample_ids)


def ensemble_scores(model: SubspaceEnsembleModel, x: np.ndarray) -> np.ndarray:
    """Mean member posterior for a single feature vector."""
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1:
        raise DataError("ensemble_scores expects a single vector")
    return model.scores_matrix(x[None, :])[0]
