import numpy as np
import pytest

from dfbench.errors import DataError
from dfbench.folds import stratified_folds

FIVE_CLASS_COUNTS = [435, 439, 439, 439, 434]


def labels_from_counts(counts):
    return np.concatenate([np.full(c, i) for i, c in enumerate(counts)])


def test_exact_division_gives_equal_folds():
    labels = labels_from_counts([435])
    plan = stratified_folds(labels, k=5, seed=0)
    sizes = np.bincount(plan.assignment, minlength=5)
    assert np.array_equal(sizes, np.full(5, 87))


def test_remainder_spread_over_leading_folds():
    labels = labels_from_counts([439])
    plan = stratified_folds(labels, k=5, seed=0)
    sizes = sorted(np.bincount(plan.assignment, minlength=5).tolist())
    assert sizes == [87, 88, 88, 88, 88]


def test_five_class_fold_balance():
    labels = labels_from_counts(FIVE_CLASS_COUNTS)
    plan = stratified_folds(labels, k=5, seed=3)
    for cls, count in enumerate(FIVE_CLASS_COUNTS):
        per_fold = np.bincount(plan.assignment[labels == cls], minlength=5)
        assert per_fold.sum() == count
        assert per_fold.max() - per_fold.min() <= 1


def test_folds_partition_everything():
    labels = labels_from_counts([20, 30, 25])
    plan = stratified_folds(labels, k=4, seed=1)
    seen = np.concatenate([plan.test_rows(f) for f in range(4)])
    assert sorted(seen.tolist()) == list(range(75))
    for f in range(4):
        train = set(plan.train_rows(f).tolist())
        test = set(plan.test_rows(f).tolist())
        assert not train & test
        assert len(train | test) == 75


def test_same_seed_same_plan_different_seed_differs():
    labels = labels_from_counts([50, 50])
    a = stratified_folds(labels, k=5, seed=7)
    b = stratified_folds(labels, k=5, seed=7)
    c = stratified_folds(labels, k=5, seed=8)
    assert np.array_equal(a.assignment, b.assignment)
    assert not np.array_equal(a.assignment, c.assignment)
    # stratification holds for any seed
    for plan in (a, c):
        for cls in (0, 1):
            per_fold = np.bincount(plan.assignment[labels == cls], minlength=5)
            assert np.array_equal(per_fold, np.full(5, 10))


def test_class_smaller_than_k_rejected():
    labels = labels_from_counts([10, 3])
    with pytest.raises(DataError, match="fewer than 5"):
        stratified_folds(labels, k=5, seed=0)
