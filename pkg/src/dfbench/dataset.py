"""Feature matrices joined with class labels."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DataError
from .features import FeatureMatrix
from .manifest import DatasetManifest


@dataclass(frozen=True)
class LabeledDataset:
    features: FeatureMatrix
    labels: np.ndarray
    class_names: tuple[str, ...]

    def __post_init__(self):
        labels = np.asarray(self.labels, dtype=np.int64)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "class_names", tuple(self.class_names))
        if labels.shape != (self.features.n_samples,):
            raise DataError(
                f"{labels.shape[0]} labels for {self.features.n_samples} samples"
            )
        k = len(self.class_names)
        if k == 0:
            raise DataError("empty class vocabulary")
        if labels.size and (labels.min() < 0 or labels.max() >= k):
            raise DataError(f"label outside [0, {k})")
        present = np.bincount(labels, minlength=k)
        missing = [self.class_names[i] for i in range(k) if present[i] == 0]
        if missing:
            raise DataError(f"classes with no samples: {missing}")

    @property
    def n_samples(self) -> int:
        return self.features.n_samples

    @property
    def n_features(self) -> int:
        return self.features.n_features

    @property
    def n_classes(self) -> int:
        return len(self.class_names)

    def class_counts(self) -> np.ndarray:
        return np.bincount(self.labels, minlength=self.n_classes)

    def subset_classes(self, names) -> "LabeledDataset":
        """Restrict to the given classes, relabelled 0..K'-1 in the given order."""
        names = list(names)
        if not names:
            raise DataError("class filter is empty")
        for name in names:
            if name not in self.class_names:
                raise DataError(f"class {name!r} not in dataset classes {list(self.class_names)}")
        old_index = {name: self.class_names.index(name) for name in names}
        remap = {old_index[name]: new for new, name in enumerate(names)}
        keep = np.isin(self.labels, list(remap))
        rows = np.flatnonzero(keep)
        new_labels = np.array([remap[int(l)] for l in self.labels[rows]], dtype=np.int64)
        sub = FeatureMatrix(
            self.features.values[rows],
            tuple(self.features.sample_ids[i] for i in rows),
        )
        return LabeledDataset(sub, new_labels, tuple(names))

    def select_rows(self, rows) -> "LabeledDataset":
        rows = np.asarray(rows, dtype=np.int64)
        sub = FeatureMatrix(
            self.features.values[rows],
            tuple(self.features.sample_ids[i] for i in rows),
        )
        return LabeledDataset(sub, self.labels[rows], self.class_names)


def build_dataset(features: FeatureMatrix, manifest: DatasetManifest) -> LabeledDataset:
    """Join feature rows with manifest labels by sample id."""
    label_of = manifest.label_of()
    class_names = manifest.class_names
    index = {name: i for i, name in enumerate(class_names)}
    labels = np.empty(features.n_samples, dtype=np.int64)
    for i, sid in enumerate(features.sample_ids):
        cls = label_of.get(sid)
        if cls is None:
            raise DataError(f"sample {sid!r} has no manifest entry")
        labels[i] = index[cls]
    present = set(labels.tolist())
    kept = [name for i, name in enumerate(class_names) if i in present]
    if len(kept) != len(class_names):
        remap = {index[name]: j for j, name in enumerate(kept)}
        labels = np.array([remap[int(l)] for l in labels], dtype=np.int64)
        class_names = kept
    return LabeledDataset(features, labels, tuple(class_names))
