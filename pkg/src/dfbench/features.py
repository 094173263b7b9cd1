"""Dense feature matrices and their on-disk forms.

Two interchangeable file forms exist:

* Binary: magic ``DFB1`` | u32 n_samples | u32 n_features | row-major
  little-endian float32 payload | u32 trailer length | newline-delimited
  UTF-8 sample ids. Compact, byte-stable, the preferred interchange format.
* CSV: header ``sample_id,f0,...,f{D-1}``, one row per sample.

Files hold float32; everything in memory is float64. Loading either form of
the same data yields identical matrices because CSV values are quantized
through float32 on read.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import DataError

MAGIC = b"DFB1"


@dataclass(frozen=True)
class FeatureMatrix:
    """Row-major feature values plus row-aligned sample ids."""

    values: np.ndarray
    sample_ids: tuple[str, ...]

    def __post_init__(self):
        values = np.ascontiguousarray(np.asarray(self.values, dtype=np.float64))
        if values.ndim != 2:
            raise DataError(f"feature values must be 2-D, got shape {values.shape}")
        object.__setattr__(self, "values", values)
        ids = tuple(str(s) for s in self.sample_ids)
        object.__setattr__(self, "sample_ids", ids)
        if len(ids) != values.shape[0]:
            raise DataError(
                f"{len(ids)} sample ids for {values.shape[0]} rows"
            )
        if len(set(ids)) != len(ids):
            seen: dict[str, int] = {}
            for i, s in enumerate(ids):
                if s in seen:
                    raise DataError(f"duplicate sample_id {s!r} at rows {seen[s]} and {i}")
                seen[s] = i
        bad = ~np.isfinite(values)
        if bad.any():
            r, c = np.argwhere(bad)[0]
            raise DataError(f"non-finite feature value at row {r}, column {c}")

    @property
    def n_samples(self) -> int:
        return self.values.shape[0]

    @property
    def n_features(self) -> int:
        return self.values.shape[1]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FeatureMatrix)
            and self.sample_ids == other.sample_ids
            and self.values.shape == other.values.shape
            and np.array_equal(self.values, other.values)
        )


def write_feature_matrix(matrix: FeatureMatrix, path) -> None:
    """Write the binary form. Values are stored as little-endian float32."""
    if matrix.n_features == 0 or matrix.n_samples == 0:
        raise DataError(
            f"degenerate matrix rejected: {matrix.n_samples}x{matrix.n_features}"
        )
    payload = matrix.values.astype("<f4").tobytes(order="C")
    trailer = "".join(s + "\n" for s in matrix.sample_ids).encode("utf-8")
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(struct.pack("<II", matrix.n_samples, matrix.n_features))
        fh.write(payload)
        fh.write(struct.pack("<I", len(trailer)))
        fh.write(trailer)


def write_feature_matrix_csv(matrix: FeatureMatrix, path) -> None:
    """Write the CSV form. Floats are printed as shortest float32 round-trips."""
    if matrix.n_features == 0 or matrix.n_samples == 0:
        raise DataError(
            f"degenerate matrix rejected: {matrix.n_samples}x{matrix.n_features}"
        )
    vals32 = matrix.values.astype(np.float32)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("sample_id," + ",".join(f"f{j}" for j in range(matrix.n_features)) + "\n")
        for sid, row in zip(matrix.sample_ids, vals32):
            cells = ",".join(np.format_float_positional(v, unique=True, trim="0") for v in row)
            fh.write(f"{sid},{cells}\n")


def load_feature_matrix(path) -> FeatureMatrix:
    """Load either file form, sniffing the binary magic first."""
    path = Path(path)
    if not path.exists():
        raise DataError(f"feature file not found: {path}")
    with open(path, "rb") as fh:
        head = fh.read(4)
    if head == MAGIC:
        return _load_binary(path)
    return _load_csv(path)


def _load_binary(path: Path) -> FeatureMatrix:
    blob = path.read_bytes()
    if len(blob) < 12:
        raise DataError(f"{path}: malformed header (file truncated)")
    n, d = struct.unpack_from("<II", blob, 4)
    payload_len = n * d * 4
    pos = 12
    if len(blob) < pos + payload_len + 4:
        raise DataError(
            f"{path}: dimension mismatch, header says {n}x{d} "
            f"but only {len(blob) - pos} payload bytes follow"
        )
    values = np.frombuffer(blob, dtype="<f4", count=n * d, offset=pos).reshape(n, d)
    pos += payload_len
    (trailer_len,) = struct.unpack_from("<I", blob, pos)
    pos += 4
    if len(blob) != pos + trailer_len:
        raise DataError(f"{path}: trailer length {trailer_len} does not match file size")
    ids = blob[pos : pos + trailer_len].decode("utf-8").splitlines()
    if len(ids) != n:
        raise DataError(f"{path}: {len(ids)} sample ids for {n} rows")
    _check_finite(values, path)
    return FeatureMatrix(values.astype(np.float64), tuple(ids))


def _load_csv(path: Path) -> FeatureMatrix:
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().rstrip("\n")
        cols = header.split(",")
        if len(cols) < 2 or cols[0] != "sample_id" or cols[1] != "f0":
            raise DataError(f"{path}: malformed header {header[:60]!r}")
        d = len(cols) - 1
        ids: list[str] = []
        rows: list[np.ndarray] = []
        for lineno, line in enumerate(fh):
            line = line.rstrip("\n")
            if not line:
                continue
            cells = line.split(",")
            if len(cells) != d + 1:
                raise DataError(
                    f"{path}: dimension mismatch at row {lineno}, "
                    f"expected {d} features, got {len(cells) - 1}"
                )
            ids.append(cells[0])
            try:
                row = np.array([float(c) for c in cells[1:]], dtype=np.float64)
            except ValueError as exc:
                raise DataError(f"{path}: unparsable value at row {lineno}: {exc}") from exc
            rows.append(row)
    if not rows:
        raise DataError(f"{path}: no data rows")
    values = np.vstack(rows)
    _check_finite(values, path)
    # Files carry float32 data; quantize so CSV and binary forms load identically.
    values = values.astype(np.float32).astype(np.float64)
    return FeatureMatrix(values, tuple(ids))


def _check_finite(values: np.ndarray, path: Path) -> None:
    bad = ~np.isfinite(values)
    if bad.any():
        r, c = np.argwhere(bad)[0]
        raise DataError(f"{path}: non-finite value at row {r}, column {c}")
