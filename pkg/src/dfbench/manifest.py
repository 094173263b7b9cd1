"""Dataset manifests: which sample came from where, and with what label.

Manifest file layout, one record per line:

    # class <class_name> <declared_total> [<declared_augmented>]
    # provenance <class_name> <free text>
    <sample_id>,<source_file>,<class_name>,<augmented 0|1>

``# class`` lines declare expected per-class counts; the parser enforces that
the records actually match them. ``# provenance`` lines attach free-form
source notes to a class.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .errors import DataError
from .features import FeatureMatrix


@dataclass(frozen=True)
class ManifestEntry:
    sample_id: str
    source_file: str
    class_name: str
    augmented: bool


@dataclass(frozen=True)
class DatasetManifest:
    entries: tuple[ManifestEntry, ...]
    declared_counts: dict[str, int]
    declared_augmented: dict[str, int]
    provenance: dict[str, list[str]]

    @property
    def class_names(self) -> list[str]:
        """Classes in declaration order, falling back to record order."""
        names = list(self.declared_counts)
        for e in self.entries:
            if e.class_name not in names:
                names.append(e.class_name)
        return names

    def counts(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for e in self.entries:
            out[e.class_name] = out.get(e.class_name, 0) + 1
        return out

    def augmented_counts(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for e in self.entries:
            if e.augmented:
                out[e.class_name] = out.get(e.class_name, 0) + 1
        return out

    def label_of(self) -> dict[str, str]:
        return {e.sample_id: e.class_name for e in self.entries}

    @property
    def total(self) -> int:
        return len(self.entries)


def load_manifest(path) -> DatasetManifest:
    path = Path(path)
    if not path.exists():
        raise DataError(f"manifest not found: {path}")
    declared: dict[str, int] = {}
    declared_aug: dict[str, int] = {}
    provenance: dict[str, list[str]] = {}
    entries: list[ManifestEntry] = []
    seen: dict[str, int] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                _parse_header(line, lineno, declared, declared_aug, provenance, path)
                continue
            parts = line.split(",")
            if len(parts) != 4:
                raise DataError(f"{path}:{lineno}: expected 4 comma-separated fields")
            sid, source, cls, aug = (p.strip() for p in parts)
            if aug not in ("0", "1"):
                raise DataError(f"{path}:{lineno}: augmented flag must be 0 or 1, got {aug!r}")
            if sid in seen:
                raise DataError(
                    f"{path}: duplicate sample_id {sid!r} on lines {seen[sid]} and {lineno}"
                )
            seen[sid] = lineno
            entries.append(ManifestEntry(sid, source, cls, aug == "1"))
    manifest = DatasetManifest(tuple(entries), declared, declared_aug, provenance)
    _check_declarations(manifest, path)
    return manifest


def write_manifest(manifest: DatasetManifest, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for cls, total in manifest.declared_counts.items():
            aug = manifest.declared_augmented.get(cls, 0)
            if aug:
                fh.write(f"# class {cls} {total} {aug}\n")
            else:
                fh.write(f"# class {cls} {total}\n")
        for cls, notes in manifest.provenance.items():
            for note in notes:
                fh.write(f"# provenance {cls} {note}\n")
        for e in manifest.entries:
            fh.write(f"{e.sample_id},{e.source_file},{e.class_name},{int(e.augmented)}\n")


def _parse_header(line, lineno, declared, declared_aug, provenance, path) -> None:
    body = line[1:].strip()
    if not body:
        return
    parts = body.split(None, 2)
    kind = parts[0]
    if kind == "class":
        if len(parts) < 3:
            raise DataError(f"{path}:{lineno}: class declaration needs a name and count")
        name = parts[1]
        numbers = parts[2].split()
        try:
            declared[name] = int(numbers[0])
            if len(numbers) > 1:
                declared_aug[name] = int(numbers[1])
        except ValueError as exc:
            raise DataError(f"{path}:{lineno}: bad count in class declaration") from exc
    elif kind == "provenance":
        if len(parts) < 3:
            raise DataError(f"{path}:{lineno}: provenance line needs a class and text")
        provenance.setdefault(parts[1], []).append(parts[2])
    # other comment lines are ignored


def _check_declarations(manifest: DatasetManifest, path) -> None:
    counts = manifest.counts()
    for cls, expected in manifest.declared_counts.items():
        actual = counts.get(cls, 0)
        if actual != expected:
            raise DataError(
                f"{path}: class {cls!r} declares {expected} samples but has {actual}"
            )
    aug_counts = manifest.augmented_counts()
    for cls, expected in manifest.declared_augmented.items():
        actual = aug_counts.get(cls, 0)
        if actual != expected:
            raise DataError(
                f"{path}: class {cls!r} declares {expected} augmented samples but has {actual}"
            )


@dataclass
class ValidationReport:
    """Findings from reconciling a manifest against a feature matrix."""

    class_counts: dict[str, int] = field(default_factory=dict)
    augmented_counts: dict[str, int] = field(default_factory=dict)
    total: int = 0
    missing_in_manifest: list[str] = field(default_factory=list)
    missing_in_features: list[str] = field(default_factory=list)
    count_mismatches: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.missing_in_manifest or self.missing_in_features or self.count_mismatches)

    def findings(self) -> list[str]:
        out = []
        for sid in self.missing_in_manifest:
            out.append(f"sample {sid!r} present in features but absent from manifest")
        for sid in self.missing_in_features:
            out.append(f"sample {sid!r} present in manifest but absent from features")
        out.extend(self.count_mismatches)
        return out


def validate_manifest(manifest: DatasetManifest, features: FeatureMatrix) -> ValidationReport:
    """Reconcile manifest records with feature rows; findings go in the report."""
    report = ValidationReport()
    label_of = manifest.label_of()
    feature_ids = set(features.sample_ids)

    matched_counts: dict[str, int] = {}
    matched_aug: dict[str, int] = {}
    for sid in features.sample_ids:
        cls = label_of.get(sid)
        if cls is None:
            report.missing_in_manifest.append(sid)
    for e in manifest.entries:
        if e.sample_id not in feature_ids:
            report.missing_in_features.append(e.sample_id)
            continue
        matched_counts[e.class_name] = matched_counts.get(e.class_name, 0) + 1
        if e.augmented:
            matched_aug[e.class_name] = matched_aug.get(e.class_name, 0) + 1

    report.class_counts = matched_counts
    report.augmented_counts = matched_aug
    report.total = sum(matched_counts.values())

    for cls, expected in manifest.declared_counts.items():
        actual = matched_counts.get(cls, 0)
        if actual != expected:
            report.count_mismatches.append(
                f"class {cls!r}: declared {expected}, matched {actual}"
            )
    for cls, expected in manifest.declared_augmented.items():
        actual = matched_aug.get(cls, 0)
        if actual != expected:
            report.count_mismatches.append(
                f"class {cls!r}: declared {expected} augmented, matched {actual}"
            )
    return report
