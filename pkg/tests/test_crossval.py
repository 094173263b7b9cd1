import numpy as np
import pytest

from dfbench.crossval import fit_fold, run_cv
from dfbench.dataset import LabeledDataset
from dfbench.errors import TrainingError
from dfbench.features import FeatureMatrix
from dfbench.folds import stratified_folds
from dfbench.subspace import SubspaceEnsembleSpec
from dfbench.svm import SvmSpec, Standardizer

from .test_lda import make_dataset


class ConstantSpec:
    """Test double: always predicts class 0."""

    def fit(self, data):
        k = data.n_classes

        class Model:
            def scores_matrix(self, x):
                scores = np.zeros((np.atleast_2d(x).shape[0], k))
                scores[:, 0] = 1.0
                return scores

        return Model()


class ReadLabelSpec:
    """Test double: feature column 0 carries the true label."""

    def fit(self, data):
        k = data.n_classes

        class Model:
            def scores_matrix(self, x):
                x = np.atleast_2d(x)
                scores = np.zeros((x.shape[0], k))
                scores[np.arange(x.shape[0]), x[:, 0].astype(int)] = 1.0
                return scores

        return Model()


class FailingSpec:
    def fit(self, data):
        raise TrainingError("synthetic failure")


def balanced_dataset(n_per_class=20, k=5, seed=0):
    rng = np.random.default_rng(seed)
    labels = np.repeat(np.arange(k), n_per_class)
    values = np.column_stack([labels.astype(float), rng.normal(size=labels.size)])
    return make_dataset(values, labels, names=tuple(f"c{i}" for i in range(k)))


def separated_blobs(n=500, d=20, k=5, spread=10.0, seed=0):
    rng = np.random.default_rng(seed)
    per = n // k
    labels = np.repeat(np.arange(k), per)
    centers = rng.normal(size=(k, d)) * spread
    values = rng.normal(size=(per * k, d)) + centers[labels]
    return make_dataset(values, labels, names=tuple(f"c{i}" for i in range(k)))


def test_constant_classifier_on_balanced_data():
    data = balanced_dataset()
    plan = stratified_folds(data.labels, k=5, seed=1)
    report = run_cv(data, ConstantSpec(), plan)
    assert report.accuracy == pytest.approx(0.2)
    assert report.confusion.counts[:, 0].sum() == data.n_samples


def test_oracle_classifier_is_perfect():
    data = balanced_dataset()
    plan = stratified_folds(data.labels, k=5, seed=2)
    report = run_cv(data, ReadLabelSpec(), plan)
    assert report.accuracy == 1.0
    assert np.array_equal(
        report.confusion.counts, np.diag(np.full(5, 20))
    )
    assert all(a == 1.0 for a in report.fold_accuracies)
    assert report.ci_halfwidth == 0.0


def test_synthetic_blobs_ensemble_accuracy():
    data = separated_blobs()
    plan = stratified_folds(data.labels, k=5, seed=3)
    spec = SubspaceEnsembleSpec(n_learners=30, subspace_dim=10, seed=4)
    report = run_cv(data, spec, plan)
    assert report.accuracy >= 0.95
    assert len(report.per_class_auc) == 5
    assert all(auc > 0.9 for auc in report.per_class_auc)


def test_training_failure_names_fold():
    data = balanced_dataset()
    plan = stratified_folds(data.labels, k=4, seed=5)
    with pytest.raises(TrainingError, match="fold 0"):
        run_cv(data, FailingSpec(), plan)


def test_no_leakage_deleting_test_rows():
    """Removing a test-fold sample must not change that fold's trained model."""
    data = separated_blobs(n=100, d=6, k=2, seed=6)
    plan = stratified_folds(data.labels, k=5, seed=7)
    spec = SvmSpec(kernel="gaussian", kernel_scale=4.0)
    fold = 2
    model = fit_fold(data, plan, fold, spec)

    # drop one test-fold row, refit on the same training rows
    victim = plan.test_rows(fold)[0]
    keep = np.array([i for i in range(data.n_samples) if i != victim])
    reduced = data.select_rows(keep)

    class ReducedPlan:
        k = plan.k

        def train_rows(self, f):
            rows = [i for i in plan.train_rows(f) if i != victim]
            return np.array([i - (1 if i > victim else 0) for i in rows])

        def test_rows(self, f):
            rows = [i for i in plan.test_rows(f) if i != victim]
            return np.array([i - (1 if i > victim else 0) for i in rows])

    refit = fit_fold(reduced, ReducedPlan(), fold, spec)
    assert np.array_equal(model.standardizer.mean, refit.standardizer.mean)
    assert np.array_equal(model.standardizer.std, refit.standardizer.std)
    for (ci, cj, m1), (di, dj, m2) in zip(model.machines, refit.machines):
        assert (ci, cj) == (di, dj)
        assert np.array_equal(m1.alpha, m2.alpha)
        assert m1.bias == m2.bias


def test_standardization_statistics_from_training_rows_only():
    data = separated_blobs(n=60, d=4, k=2, seed=8)
    plan = stratified_folds(data.labels, k=3, seed=9)
    spec = SvmSpec(kernel="gaussian", kernel_scale=4.0)
    for fold in range(3):
        model = fit_fold(data, plan, fold, spec)
        train_values = data.features.values[plan.train_rows(fold)]
        want = Standardizer.fit(train_values)
        assert np.array_equal(model.standardizer.mean, want.mean)
        assert np.array_equal(model.standardizer.std, want.std)


def test_micro_recall_equals_accuracy_on_balanced_reduction():
    data = balanced_dataset(n_per_class=30, k=3, seed=10)
    plan = stratified_folds(data.labels, k=5, seed=11)
    report = run_cv(data, ReadLabelSpec(), plan)
    per_class = report.per_class
    micro_tp = sum(m.tp for m in per_class)
    micro_fn = sum(m.fn for m in per_class)
    assert micro_tp / (micro_tp + micro_fn) == pytest.approx(report.accuracy)
