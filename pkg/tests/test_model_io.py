import numpy as np
import pytest

from dfbench.errors import DataError
from dfbench.lda import fit_lda
from dfbench.model_io import load_model, save_model
from dfbench.subspace import SubspaceEnsembleSpec, fit_subspace_ensemble
from dfbench.svm import SvmSpec, fit_ovo_svm

from .test_lda import gaussian_blobs


def test_lda_round_trip(tmp_path):
    data = gaussian_blobs(seed=1, n_per_class=30)
    model = fit_lda(data, gamma=0.25)
    path = tmp_path / "lda.bin"
    save_model(model, path)
    loaded = load_model(path)
    assert loaded.class_names == model.class_names
    assert loaded.gamma == model.gamma
    assert np.array_equal(loaded.class_means, model.class_means)
    assert np.array_equal(loaded.pooled_precision, model.pooled_precision)
    assert np.array_equal(loaded.log_priors, model.log_priors)
    x = data.features.values
    assert np.array_equal(loaded.scores_matrix(x), model.scores_matrix(x))


def test_subspace_round_trip(tmp_path):
    data = gaussian_blobs(seed=2, n_per_class=25)
    model = fit_subspace_ensemble(data, SubspaceEnsembleSpec(5, 2, seed=9))
    path = tmp_path / "ens.bin"
    save_model(model, path)
    loaded = load_model(path)
    assert loaded.spec == model.spec
    assert len(loaded.members) == len(model.members)
    for (c1, m1), (c2, m2) in zip(model.members, loaded.members):
        assert np.array_equal(c1, c2)
        assert np.array_equal(m1.class_means, m2.class_means)
    x = data.features.values
    assert np.array_equal(loaded.scores_matrix(x), model.scores_matrix(x))


def test_ovo_svm_round_trip(tmp_path):
    data = gaussian_blobs(seed=3, n_per_class=15, centers=((0, 0), (8, 0), (0, 8)))
    model = fit_ovo_svm(data, SvmSpec(kernel="quadratic", box_constraint=2.0))
    path = tmp_path / "svm.bin"
    save_model(model, path)
    loaded = load_model(path)
    assert loaded.spec.kernel == "quadratic"
    assert loaded.spec.box_constraint == 2.0
    assert len(loaded.machines) == 3
    x = data.features.values
    assert np.array_equal(loaded.scores_matrix(x), model.scores_matrix(x))
    assert np.array_equal(loaded.predict_matrix(x), model.predict_matrix(x))


def test_bad_magic_rejected(tmp_path):
    path = tmp_path / "junk.bin"
    path.write_bytes(b"NOPE" + bytes(20))
    with pytest.raises(DataError, match="not a model file"):
        load_model(path)


def test_unknown_model_type_rejected(tmp_path):
    with pytest.raises(DataError, match="cannot serialize"):
        save_model(object(), tmp_path / "x.bin")
