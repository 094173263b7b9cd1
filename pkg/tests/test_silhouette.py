import numpy as np
import pytest

from dfbench.errors import DataError
from dfbench.silhouette import pairwise_distances, silhouette


def oracle_silhouette(x, labels):
    """Direct-definition oracle: explicit loops, no shared code paths."""
    n = len(labels)
    values = np.zeros(n)
    for i in range(n):
        own = [j for j in range(n) if labels[j] == labels[i] and j != i]
        if not own:
            continue
        a = np.mean([np.linalg.norm(x[i] - x[j]) for j in own])
        b = np.inf
        for cls in set(labels) - {labels[i]}:
            rows = [j for j in range(n) if labels[j] == cls]
            b = min(b, np.mean([np.linalg.norm(x[i] - x[j]) for j in rows]))
        denom = max(a, b)
        values[i] = (b - a) / denom if denom > 0 else 0.0
    return values


def test_four_point_hand_case():
    x = np.array([[0.0], [0.1], [1.0], [1.1]])
    labels = [0, 0, 1, 1]
    report = silhouette(x, labels)
    # a(0) = 0.1, b(0) = (1.0 + 1.1)/2 = 1.05
    assert report.intra[0] == pytest.approx(0.1)
    assert report.nearest_other[0] == pytest.approx(1.05)
    assert report.values[0] == pytest.approx((1.05 - 0.1) / 1.05)
    assert report.values[0] == pytest.approx(0.9048, abs=1e-4)


def test_coincident_classes_no_separation():
    rng = np.random.default_rng(0)
    points = rng.normal(size=(15, 3))
    x = np.vstack([points, points])
    labels = [0] * 15 + [1] * 15
    report = silhouette(x, labels)
    assert report.class_means[0] <= 1e-9
    assert report.class_means[1] <= 1e-9


def test_matches_definitional_oracle_on_random_sets():
    rng = np.random.default_rng(1)
    for trial in range(5):
        n = 50
        x = rng.normal(size=(n, 4))
        labels = rng.integers(0, 3, size=n)
        if len(set(labels.tolist())) < 2:
            continue
        report = silhouette(x, labels)
        want = oracle_silhouette(x, labels)
        assert np.abs(report.values - want).max() < 1e-12


def test_precomputed_distances_equivalent():
    rng = np.random.default_rng(2)
    x = rng.normal(size=(20, 3))
    labels = rng.integers(0, 2, size=20)
    labels[:2] = [0, 1]
    direct = silhouette(x, labels)
    precomputed = silhouette(labels=labels, distances=pairwise_distances(x))
    assert np.array_equal(direct.values, precomputed.values)


def test_values_in_range_and_scale_invariant():
    rng = np.random.default_rng(3)
    x = rng.normal(size=(30, 2))
    labels = rng.integers(0, 3, size=30)
    labels[:3] = [0, 1, 2]
    report = silhouette(x, labels)
    assert report.values.min() >= -1.0
    assert report.values.max() <= 1.0
    scaled = silhouette(x * 37.5, labels)
    assert np.allclose(report.values, scaled.values, atol=1e-12)


def test_singleton_class_gets_zero():
    x = np.array([[0.0], [0.2], [5.0]])
    labels = [0, 0, 1]
    report = silhouette(x, labels)
    assert report.values[2] == 0.0


def test_well_separated_classes_near_one():
    rng = np.random.default_rng(4)
    a = rng.normal(size=(20, 2)) * 0.01
    b = rng.normal(size=(20, 2)) * 0.01 + 100.0
    report = silhouette(np.vstack([a, b]), [0] * 20 + [1] * 20)
    assert report.class_means.min() > 0.99


def test_single_class_rejected():
    with pytest.raises(DataError, match="2 classes"):
        silhouette(np.zeros((3, 1)), [0, 0, 0])
