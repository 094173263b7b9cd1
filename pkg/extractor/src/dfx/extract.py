"""Feature harvesting: run images through a pretrained network and capture
the 1000-way fully connected layer's pre-softmax activations.

Inference only; weights are never updated. When pretrained weights cannot be
fetched, the job fails unless untrained mode was requested explicitly, in
which case the architecture is instantiated with seeded random weights and
that fact is written into the manifest provenance.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import torch
import torchvision.models

from .fileformat import ManifestRecord, dedup_sample_ids, write_feature_file, write_manifest
from .networks import ExtractorNetwork, extractor_network
from .preprocess import preprocess_file

FEATURE_DIM = 1000
IMAGE_SUFFIXES = {".png", ".jpg", ".jpeg", ".bmp", ".tif", ".tiff"}


@dataclass
class ExtractionJob:
    image_dir: str
    network_name: str
    output_path: str
    manifest_path: str | None = None
    untrained: bool = False
    batch_size: int = 16
    augmented_stems: dict[str, set] = field(default_factory=dict)  # class -> stems

    def resolved_manifest_path(self) -> Path:
        if self.manifest_path is not None:
            return Path(self.manifest_path)
        return Path(str(self.output_path) + ".manifest")


class WeightsUnavailable(RuntimeError):
    pass


def build_model(net: ExtractorNetwork, untrained: bool) -> torch.nn.Module:
    if untrained:
        torch.manual_seed(net.weight_seed)
        model = torchvision.models.get_model(net.torchvision_arch, weights=None)
    else:
        try:
            model = torchvision.models.get_model(net.torchvision_arch, weights="DEFAULT")
        except Exception as exc:
            raise WeightsUnavailable(
                f"pretrained weights for {net.name} ({net.torchvision_arch}) "
                f"could not be loaded: {exc}; rerun with --untrained to use "
                "seeded random weights"
            ) from exc
    model.eval()
    return model


def weights_digest(model: torch.nn.Module) -> bytes:
    import hashlib

    digest = hashlib.sha256()
    for name, tensor in sorted(model.state_dict().items()):
        digest.update(name.encode())
        digest.update(tensor.detach().cpu().numpy().tobytes())
    return digest.digest()


def list_class_images(image_dir) -> list[tuple[str, Path]]:
    """(class_name, image_path) pairs, classes and files in sorted order."""
    root = Path(image_dir)
    if not root.is_dir():
        raise ValueError(f"image directory not found: {root}")
    pairs = []
    for class_dir in sorted(p for p in root.iterdir() if p.is_dir()):
        for img in sorted(class_dir.iterdir()):
            if img.suffix.lower() in IMAGE_SUFFIXES:
                pairs.append((class_dir.name, img))
    if not pairs:
        raise ValueError(f"no images under {root}")
    return pairs


def extract(job: ExtractionJob) -> tuple[Path, Path]:
    """Write the feature file and its manifest; returns both paths."""
    net = extractor_network(job.network_name)
    model = build_model(net, job.untrained)
    digest_before = weights_digest(model)

    pairs = list_class_images(job.image_dir)
    sample_ids = dedup_sample_ids([p.stem for _, p in pairs])

    rows = np.empty((len(pairs), FEATURE_DIM), dtype=np.float64)
    with torch.no_grad():
        for start in range(0, len(pairs), job.batch_size):
            chunk = pairs[start : start + job.batch_size]
            batch = torch.stack([preprocess_file(path, net) for _, path in chunk])
            logits = model(batch)
            if logits.shape[1] != FEATURE_DIM:
                raise RuntimeError(
                    f"{net.torchvision_arch} produced {logits.shape[1]} outputs, "
                    f"expected {FEATURE_DIM}"
                )
            rows[start : start + len(chunk)] = logits.double().numpy()

    if weights_digest(model) != digest_before:
        raise RuntimeError("model weights changed during inference")

    records = []
    for sid, (class_name, path) in zip(sample_ids, pairs):
        flagged = path.stem in job.augmented_stems.get(class_name, set())
        records.append(ManifestRecord(sid, str(path), class_name, flagged))

    provenance: dict[str, list[str]] = {}
    classes = sorted({c for c, _ in pairs})
    notes = [f"features from {net.name} ({net.torchvision_arch})"]
    if net.substitution_note:
        notes.append(net.substitution_note)
    if job.untrained:
        notes.append("untrained weights (seeded random init); pretrained unavailable")
    for cls in classes:
        provenance[cls] = list(notes)

    out_path = Path(job.output_path)
    write_feature_file(out_path, rows, sample_ids)
    manifest_path = job.resolved_manifest_path()
    write_manifest(manifest_path, records, provenance)
    return out_path, manifest_path
