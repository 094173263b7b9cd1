"""Writers for the benchmark engine's feature-file and manifest wire formats.

Feature file: magic ``DFB1`` | u32 n_samples | u32 n_features | row-major
little-endian float32 values | u32 trailer length | newline-delimited UTF-8
sample ids. Manifest: ``# class <name> <total> [<augmented>]`` declarations,
``# provenance <name> <text>`` notes, then ``sid,source,class,flag`` records.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

import numpy as np

MAGIC = b"DFB1"


@dataclass(frozen=True)
class ManifestRecord:
    sample_id: str
    source_file: str
    class_name: str
    augmented: bool


def write_feature_file(path, values: np.ndarray, sample_ids) -> None:
    values = np.asarray(values, dtype=np.float64)
    n, d = values.shape
    if n == 0 or d == 0:
        raise ValueError(f"degenerate matrix rejected: {n}x{d}")
    if len(sample_ids) != n:
        raise ValueError(f"{len(sample_ids)} sample ids for {n} rows")
    if not np.isfinite(values).all():
        raise ValueError("non-finite feature values")
    trailer = "".join(s + "\n" for s in sample_ids).encode("utf-8")
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(struct.pack("<II", n, d))
        fh.write(values.astype("<f4").tobytes(order="C"))
        fh.write(struct.pack("<I", len(trailer)))
        fh.write(trailer)


def write_manifest(path, records: list[ManifestRecord], provenance: dict[str, list[str]]) -> None:
    classes: dict[str, int] = {}
    augmented: dict[str, int] = {}
    for rec in records:
        classes[rec.class_name] = classes.get(rec.class_name, 0) + 1
        if rec.augmented:
            augmented[rec.class_name] = augmented.get(rec.class_name, 0) + 1
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for name, total in classes.items():
            if augmented.get(name):
                fh.write(f"# class {name} {total} {augmented[name]}\n")
            else:
                fh.write(f"# class {name} {total}\n")
        for name, notes in provenance.items():
            for note in notes:
                fh.write(f"# provenance {name} {note}\n")
        for rec in records:
            fh.write(
                f"{rec.sample_id},{rec.source_file},{rec.class_name},{int(rec.augmented)}\n"
            )


def dedup_sample_ids(stems) -> list[str]:
    """Filename stems made unique with a numeric suffix on collisions."""
    seen: dict[str, int] = {}
    out = []
    for stem in stems:
        if stem not in seen:
            seen[stem] = 0
            out.append(stem)
        else:
            seen[stem] += 1
            out.append(f"{stem}~{seen[stem]}")
    return out
