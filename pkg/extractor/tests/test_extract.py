import json
import struct
import subprocess

import numpy as np
import pytest
import torchvision.models
from PIL import Image

from dfx.extract import ExtractionJob, WeightsUnavailable, build_model, extract, weights_digest
from dfx.fileformat import dedup_sample_ids
from dfx.networks import extractor_network


def make_image_tree(tmp_path, classes, size=(32, 32), seed=0):
    rng = np.random.default_rng(seed)
    root = tmp_path / "images"
    for name, count in classes:
        directory = root / name
        directory.mkdir(parents=True)
        for i in range(count):
            array = rng.integers(0, 256, size=(size[1], size[0]), dtype=np.uint8)
            Image.fromarray(array, mode="L").save(directory / f"{name}-{i:03d}.png")
    return root


def read_feature_file(path):
    blob = path.read_bytes()
    assert blob[:4] == b"DFB1"
    n, d = struct.unpack_from("<II", blob, 4)
    values = np.frombuffer(blob, dtype="<f4", count=n * d, offset=12).reshape(n, d)
    (trailer_len,) = struct.unpack_from("<I", blob, 12 + n * d * 4)
    ids = blob[16 + n * d * 4 :].decode("utf-8").splitlines()
    assert len(blob) == 16 + n * d * 4 + trailer_len
    return values, ids


def run_job(tmp_path, root, net="ShuffleNet", **kwargs):
    out = tmp_path / "features.dfb"
    job = ExtractionJob(
        image_dir=str(root),
        network_name=net,
        output_path=str(out),
        untrained=True,
        **kwargs,
    )
    return extract(job)


def test_feature_file_shape_and_ids(tmp_path):
    root = make_image_tree(tmp_path, [("covid", 3), ("normal", 4)])
    out_path, manifest_path = run_job(tmp_path, root)
    values, ids = read_feature_file(out_path)
    assert values.shape == (7, 1000)
    assert np.isfinite(values).all()
    assert ids[:3] == ["covid-000", "covid-001", "covid-002"]
    manifest = manifest_path.read_text().splitlines()
    assert "# class covid 3" in manifest
    assert "# class normal 4" in manifest
    assert sum(1 for line in manifest if not line.startswith("#")) == 7


def test_same_image_twice_identical_rows(tmp_path):
    root = make_image_tree(tmp_path, [("a", 1), ("b", 1)], seed=1)
    # duplicate the single image of class a into class b
    src = next((root / "a").iterdir())
    (root / "b" / "copy.png").write_bytes(src.read_bytes())
    out_path, _ = run_job(tmp_path, root)
    values, ids = read_feature_file(out_path)
    row_src = values[ids.index(src.stem)]
    row_copy = values[ids.index("copy")]
    assert np.array_equal(row_src, row_copy)


def test_inference_does_not_mutate_weights(tmp_path):
    net = extractor_network("ShuffleNet")
    model = build_model(net, untrained=True)
    before = weights_digest(model)
    root = make_image_tree(tmp_path, [("x", 2)], seed=2)
    run_job(tmp_path, root)
    assert weights_digest(model) == before


def test_untrained_mode_recorded_in_provenance(tmp_path):
    root = make_image_tree(tmp_path, [("c", 2)], seed=3)
    _, manifest_path = run_job(tmp_path, root)
    text = manifest_path.read_text()
    assert "# provenance c" in text
    assert "untrained weights" in text


def test_substitution_note_recorded(tmp_path):
    root = make_image_tree(tmp_path, [("c", 2)], seed=4)
    out = tmp_path / "xcept.dfb"
    job = ExtractionJob(str(root), "Xception", str(out), untrained=True)
    _, manifest_path = extract(job)
    assert "substituted" in manifest_path.read_text()


def test_weight_download_failure_is_error(tmp_path, monkeypatch):
    def boom(arch, weights=None):
        raise RuntimeError("no route to model zoo")

    monkeypatch.setattr(torchvision.models, "get_model", boom)
    with pytest.raises(WeightsUnavailable, match="rerun with --untrained"):
        build_model(extractor_network("ShuffleNet"), untrained=False)


def test_dedup_sample_ids():
    assert dedup_sample_ids(["a", "b", "a", "a"]) == ["a", "b", "a~1", "a~2"]


def test_output_passes_dfbench_check(tmp_path):
    root = make_image_tree(tmp_path, [("covid", 5), ("normal", 5)], seed=5)
    out_path, manifest_path = run_job(tmp_path, root)
    config = tmp_path / "check.json"
    config.write_text(
        json.dumps(
            {
                "features": {"ShuffleNet": str(out_path)},
                "manifest": str(manifest_path),
            }
        )
    )
    proc = subprocess.run(
        ["dfbench", "check", "--config", str(config)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr
    assert "All 2-class dataset: 10" in proc.stdout


def test_cli_extract_with_augmentation(tmp_path):
    from dfx.cli import main

    root = make_image_tree(tmp_path, [("tb", 12), ("normal", 8)], seed=6)
    out = tmp_path / "cli.dfb"
    code = main(
        [
            "extract",
            "--net", "ShuffleNet",
            "--images", str(root),
            "--out", str(out),
            "--augment", "tb:4",
            "--seed", "9",
            "--untrained",
        ]
    )
    assert code == 0
    values, ids = read_feature_file(out)
    assert values.shape == (24, 1000)
    manifest = (tmp_path / "cli.dfb.manifest").read_text().splitlines()
    assert "# class tb 16 4" in manifest
    flagged = [l for l in manifest if not l.startswith("#") and l.endswith(",1")]
    assert len(flagged) == 4
    assert all(",tb," in l for l in flagged)
