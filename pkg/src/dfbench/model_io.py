"""Versioned binary persistence for trained classifiers.

Layout: magic ``DFM1`` | u16 format version | u8 model kind | payload.
Scalars and array data are little-endian; arrays carry an ndim byte and u32
dims before raw float64 bytes. Strings are u32-length-prefixed UTF-8.
"""

from __future__ import annotations

import struct
from io import BufferedReader, BufferedWriter

import numpy as np

from .errors import DataError
from .lda import LdaModel
from .subspace import SubspaceEnsembleModel, SubspaceEnsembleSpec
from .svm import BinarySvm, OvoSvmModel, Standardizer, SvmSpec

MAGIC = b"DFM1"
VERSION = 1

_KIND_LDA = 1
_KIND_SUBSPACE = 2
_KIND_OVO_SVM = 3


def save_model(model, path) -> None:
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(struct.pack("<H", VERSION))
        if isinstance(model, LdaModel):
            fh.write(struct.pack("<B", _KIND_LDA))
            _write_lda(fh, model)
        elif isinstance(model, SubspaceEnsembleModel):
            fh.write(struct.pack("<B", _KIND_SUBSPACE))
            _write_subspace(fh, model)
        elif isinstance(model, OvoSvmModel):
            fh.write(struct.pack("<B", _KIND_OVO_SVM))
            _write_ovo(fh, model)
        else:
            raise DataError(f"cannot serialize model of type {type(model).__name__}")


def load_model(path):
    with open(path, "rb") as fh:
        if fh.read(4) != MAGIC:
            raise DataError(f"{path}: not a model file")
        (version,) = struct.unpack("<H", fh.read(2))
        if version != VERSION:
            raise DataError(f"{path}: unsupported model format version {version}")
        (kind,) = struct.unpack("<B", fh.read(1))
        if kind == _KIND_LDA:
            return _read_lda(fh)
        if kind == _KIND_SUBSPACE:
            return _read_subspace(fh)
        if kind == _KIND_OVO_SVM:
            return _read_ovo(fh)
        raise DataError(f"{path}: unknown model kind {kind}")


def _write_array(fh: BufferedWriter, arr: np.ndarray) -> None:
    arr = np.ascontiguousarray(arr, dtype=np.float64)
    fh.write(struct.pack("<B", arr.ndim))
    for dim in arr.shape:
        fh.write(struct.pack("<I", dim))
    fh.write(arr.astype("<f8").tobytes())


def _read_array(fh: BufferedReader) -> np.ndarray:
    (ndim,) = struct.unpack("<B", fh.read(1))
    shape = tuple(struct.unpack("<I", fh.read(4))[0] for _ in range(ndim))
    count = int(np.prod(shape)) if shape else 1
    data = np.frombuffer(fh.read(count * 8), dtype="<f8", count=count)
    return data.reshape(shape).astype(np.float64)


def _write_str(fh, text: str) -> None:
    raw = text.encode("utf-8")
    fh.write(struct.pack("<I", len(raw)))
    fh.write(raw)


def _read_str(fh) -> str:
    (length,) = struct.unpack("<I", fh.read(4))
    return fh.read(length).decode("utf-8")


def _write_names(fh, names) -> None:
    fh.write(struct.pack("<I", len(names)))
    for name in names:
        _write_str(fh, name)


def _read_names(fh) -> tuple[str, ...]:
    (count,) = struct.unpack("<I", fh.read(4))
    return tuple(_read_str(fh) for _ in range(count))


def _write_lda(fh, model: LdaModel) -> None:
    _write_names(fh, model.class_names)
    fh.write(struct.pack("<d", model.gamma))
    _write_array(fh, model.class_means)
    _write_array(fh, model.pooled_precision)
    _write_array(fh, model.log_priors)


def _read_lda(fh) -> LdaModel:
    names = _read_names(fh)
    (gamma,) = struct.unpack("<d", fh.read(8))
    means = _read_array(fh)
    precision = _read_array(fh)
    log_priors = _read_array(fh)
    return LdaModel(means, precision, log_priors, gamma, names)


def _write_subspace(fh, model: SubspaceEnsembleModel) -> None:
    _write_names(fh, model.class_names)
    spec = model.spec
    fh.write(struct.pack("<IIQd", spec.n_learners, spec.subspace_dim, spec.seed, spec.gamma))
    fh.write(struct.pack("<I", model.n_features))
    fh.write(struct.pack("<I", len(model.members)))
    for columns, member in model.members:
        _write_array(fh, columns.astype(np.float64))
        _write_lda(fh, member)


def _read_subspace(fh) -> SubspaceEnsembleModel:
    names = _read_names(fh)
    n_learners, subspace_dim, seed, gamma = struct.unpack("<IIQd", fh.read(24))
    (n_features,) = struct.unpack("<I", fh.read(4))
    (count,) = struct.unpack("<I", fh.read(4))
    members = []
    for _ in range(count):
        columns = _read_array(fh).astype(np.int64)
        members.append((columns, _read_lda(fh)))
    spec = SubspaceEnsembleSpec(n_learners, subspace_dim, seed, gamma)
    return SubspaceEnsembleModel(tuple(members), names, n_features, spec)


def _write_svm_spec(fh, spec: SvmSpec) -> None:
    _write_str(fh, spec.kernel)
    fh.write(struct.pack("<dddI", spec.scale, spec.box_constraint, spec.tolerance, spec.max_passes))


def _read_svm_spec(fh) -> SvmSpec:
    kernel = _read_str(fh)
    scale, box, tol, max_passes = struct.unpack("<dddI", fh.read(28))
    return SvmSpec(kernel, scale, box, tol, max_passes)


def _write_ovo(fh, model: OvoSvmModel) -> None:
    _write_names(fh, model.class_names)
    _write_svm_spec(fh, model.spec)
    _write_array(fh, model.standardizer.mean)
    _write_array(fh, model.standardizer.std)
    fh.write(struct.pack("<I", len(model.machines)))
    for ci, cj, machine in model.machines:
        fh.write(struct.pack("<II", ci, cj))
        fh.write(struct.pack("<d", machine.bias))
        fh.write(struct.pack("<I", machine.n_iterations))
        _write_array(fh, machine.support_vectors)
        _write_array(fh, machine.dual_coef)
        _write_array(fh, machine.alpha)
        _write_array(fh, machine.labels)


def _read_ovo(fh) -> OvoSvmModel:
    names = _read_names(fh)
    spec = _read_svm_spec(fh)
    mean = _read_array(fh)
    std = _read_array(fh)
    (count,) = struct.unpack("<I", fh.read(4))
    machines = []
    for _ in range(count):
        ci, cj = struct.unpack("<II", fh.read(8))
        (bias,) = struct.unpack("<d", fh.read(8))
        (n_iter,) = struct.unpack("<I", fh.read(4))
        support = _read_array(fh)
        dual = _read_array(fh)
        alpha = _read_array(fh)
        labels = _read_array(fh)
        machines.append(
            (ci, cj, BinarySvm(support, dual, bias, spec, alpha, labels, n_iter))
        )
    return OvoSvmModel(tuple(machines), names, Standardizer(mean, std), spec)
