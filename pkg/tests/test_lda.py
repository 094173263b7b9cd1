import numpy as np
import pytest

from dfbench.dataset import LabeledDataset
from dfbench.errors import DataError, TrainingError
from dfbench.features import FeatureMatrix
from dfbench.lda import fit_lda, lda_scores


def make_dataset(values, labels, names=None):
    values = np.asarray(values, dtype=np.float64)
    ids = tuple(f"s{i}" for i in range(values.shape[0]))
    names = names or tuple(chr(ord("A") + c) for c in range(int(max(labels)) + 1))
    return LabeledDataset(FeatureMatrix(values, ids), np.asarray(labels), names)


def gaussian_blobs(seed=0, n_per_class=200, dims=2, centers=((0.0, 0.0), (4.0, 1.0), (-2.0, 5.0))):
    rng = np.random.default_rng(seed)
    xs, ys = [], []
    for c, center in enumerate(centers):
        xs.append(rng.normal(size=(n_per_class, dims)) + np.asarray(center))
        ys.extend([c] * n_per_class)
    return make_dataset(np.vstack(xs), ys)


def oracle_posteriors(data, x):
    """Gaussian discriminant posteriors via direct densities and np.linalg.inv."""
    k = data.n_classes
    values = data.features.values
    n = values.shape[0]
    means = np.stack([values[data.labels == c].mean(axis=0) for c in range(k)])
    pooled = np.zeros((values.shape[1], values.shape[1]))
    for c in range(k):
        centered = values[data.labels == c] - means[c]
        pooled += centered.T @ centered
    pooled /= n - k
    inv = np.linalg.inv(pooled)
    priors = np.bincount(data.labels, minlength=k) / n
    densities = np.empty(k)
    for c in range(k):
        diff = x - means[c]
        densities[c] = priors[c] * np.exp(-0.5 * diff @ inv @ diff)
    return densities / densities.sum()


def test_symmetric_1d_boundary():
    data = make_dataset([[-1.1], [-0.9], [0.9], [1.1]], [0, 0, 1, 1])
    model = fit_lda(data)
    assert np.argmax(lda_scores(model, np.array([0.5]))) == 1
    assert np.argmax(lda_scores(model, np.array([-0.5]))) == 0
    mid = lda_scores(model, np.array([0.0]))
    assert mid == pytest.approx([0.5, 0.5], abs=1e-12)


def test_posteriors_sum_to_one():
    data = gaussian_blobs()
    model = fit_lda(data)
    rng = np.random.default_rng(42)
    for _ in range(20):
        x = rng.normal(scale=5, size=2)
        assert lda_scores(model, x).sum() == pytest.approx(1.0, abs=1e-12)


def test_matches_closed_form_oracle():
    data = gaussian_blobs(seed=3)
    model = fit_lda(data)
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(50):
        x = rng.normal(scale=4, size=2)
        got = lda_scores(model, x)
        want = oracle_posteriors(data, x)
        worst = max(worst, np.abs(got - want).max())
    assert worst < 1e-8


def test_mean_vector_classified_as_its_class():
    data = gaussian_blobs(seed=5, centers=((0, 0), (30, 0), (0, 30)))
    model = fit_lda(data)
    for c in range(3):
        mean = data.features.values[data.labels == c].mean(axis=0)
        assert np.argmax(lda_scores(model, mean)) == c


def test_argmax_invariant_under_translation():
    data = gaussian_blobs(seed=11)
    shift = np.array([123.4, -77.7])
    shifted = make_dataset(data.features.values + shift, data.labels)
    model = fit_lda(data)
    refit = fit_lda(shifted)  # oracle: refit on shifted data
    rng = np.random.default_rng(13)
    for _ in range(30):
        x = rng.normal(scale=4, size=2)
        assert np.argmax(lda_scores(model, x)) == np.argmax(lda_scores(refit, x + shift))


def test_singular_covariance_pseudo_inverse():
    # feature 1 duplicates feature 0: pooled covariance is rank deficient
    rng = np.random.default_rng(17)
    base = rng.normal(size=(40, 1))
    values = np.hstack([base, base, rng.normal(size=(40, 1))])
    values[:20] += 3.0
    labels = [0] * 20 + [1] * 20
    model = fit_lda(make_dataset(values, labels))
    scores = model.scores_matrix(values)
    assert np.isfinite(scores).all()
    assert scores.sum(axis=1) == pytest.approx(np.ones(40), abs=1e-9)


def test_regularization_shrinks_to_diagonal():
    data = gaussian_blobs(seed=19)
    full = fit_lda(data, gamma=1.0)
    # gamma=1 keeps only the diagonal, so off-diagonal precision must be 0
    assert full.pooled_precision[0, 1] == pytest.approx(0.0, abs=1e-15)


def test_precision_is_symmetric():
    data = gaussian_blobs(seed=23)
    model = fit_lda(data)
    p = model.pooled_precision
    assert np.abs(p - p.T).max() <= 1e-9 * max(1.0, np.abs(p).max())


def test_single_class_rejected():
    data = make_dataset([[0.0], [1.0]], [0, 0], names=("A",))
    with pytest.raises(TrainingError, match="2 classes"):
        fit_lda(data)


def test_tiny_class_rejected():
    data = make_dataset([[0.0], [1.0], [2.0]], [0, 0, 1])
    with pytest.raises(TrainingError, match="fewer than 2"):
        fit_lda(data)


def test_dimension_mismatch_rejected():
    model = fit_lda(gaussian_blobs())
    with pytest.raises(DataError, match="features"):
        lda_scores(model, np.zeros(5))
