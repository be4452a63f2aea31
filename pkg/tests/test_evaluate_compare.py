import json
from pathlib import Path

import numpy as np
import pytest

from sketchface.data.contours import render_contour
from sketchface.data.pngio import load_photo_png
from sketchface.data.synthetic import FaceParams, face_landmarks, make_synthetic_dataset
from sketchface.errors import ValidationError
from sketchface.models.generator import GeneratorSpec, build_generator
from sketchface.train.checkpoint import save_checkpoint
from sketchface.train.evaluate import compare_models, evaluate

SIZE = 96


@pytest.fixture(scope="module")
def dataset(tmp_path_factory):
    root = tmp_path_factory.mktemp("evaldata")
    return make_synthetic_dataset(root, n_pairs=8, size=SIZE, seed=1)


@pytest.fixture(scope="module")
def checkpoint(tmp_path_factory):
    path = tmp_path_factory.mktemp("ckpt") / "g.pt"
    g = build_generator(GeneratorSpec(base_channels=4, n_resblocks=1), 5)
    return save_checkpoint(path, g, seed=5, step=0)


def test_evaluate_writes_images_and_summary(dataset, checkpoint, tmp_path):
    summary = evaluate(checkpoint, dataset, tmp_path / "out")
    assert len(summary["entries"]) == 2  # 8 pairs, 0.75 split
    for entry in summary["entries"]:
        img = load_photo_png(entry["output_path"])
        assert img.shape == (3, SIZE, SIZE)
        assert entry["l1_to_ground_truth"] >= 0.0
    assert json.load(open(tmp_path / "out" / "summary.json")) == summary


def test_evaluate_rerun_bit_identical(dataset, checkpoint, tmp_path):
    a = evaluate(checkpoint, dataset, tmp_path / "a")
    b = evaluate(checkpoint, dataset, tmp_path / "b")
    for ea, eb in zip(a["entries"], b["entries"]):
        assert open(ea["output_path"], "rb").read() == open(eb["output_path"], "rb").read()


def test_evaluate_empty_split_rejected(dataset, checkpoint, tmp_path):
    with pytest.raises(ValidationError):
        evaluate(checkpoint, dataset, tmp_path / "x", split="nope")


def test_evaluate_resolution_mismatch_rejected(checkpoint, tmp_path):
    from sketchface.errors import ShapeError

    # 100 is not a multiple of the checkpoint's downsampling factor (16)
    bad = make_synthetic_dataset(tmp_path / "bad", n_pairs=4, size=100, seed=2)
    with pytest.raises(ShapeError, match="incompatible"):
        evaluate(checkpoint, bad, tmp_path / "out")


def _edit_pair(size=256):
    base = FaceParams()
    import dataclasses

    edited = dataclasses.replace(base, nose_length=base.nose_length + 0.03)
    lm_a, lm_b = face_landmarks(base, size), face_landmarks(edited, size)
    moved = np.abs(lm_a - lm_b).sum(axis=1) > 1e-9
    pts = np.concatenate([lm_a[moved], lm_b[moved]])
    region = (pts[:, 0].min(), pts[:, 1].min(), pts[:, 0].max(), pts[:, 1].max())
    return {
        "sketch": render_contour(lm_a, size),
        "sketch_edited": render_contour(lm_b, size),
        "region": region,
    }


@pytest.fixture(scope="module")
def two_checkpoints(tmp_path_factory):
    root = tmp_path_factory.mktemp("cmp")
    paths = {}
    for name, prefix in (("baseline", 0), ("ours", 2)):
        g = build_generator(
            GeneratorSpec(base_channels=4, n_resblocks=1, norm_free_prefix=prefix), 9
        )
        paths[name] = save_checkpoint(root / f"{name}.pt", g, seed=9, step=0)
    return paths


def test_compare_identical_pair_gives_zero_change(two_checkpoints, tmp_path):
    sketch = _edit_pair()["sketch"]
    pair = {"sketch": sketch, "sketch_edited": sketch.copy(), "region": (10, 10, 30, 30)}
    report = compare_models(two_checkpoints, [pair], tmp_path / "cmp")
    for stats in report["pairs"][0]["per_model"].values():
        assert stats["pixel_change_outside_region"] == 0.0
        assert stats["probe_change"] == {"L0": 0.0, "L1": 0.0}


def test_compare_locality_of_norm_free_front_end(two_checkpoints, tmp_path):
    report = compare_models(two_checkpoints, [_edit_pair()], tmp_path / "cmp")
    stats = report["pairs"][0]["per_model"]
    # the reference point sits far outside the nose edit: without the leading
    # normalization the early features cannot move, with it they generically do
    assert stats["ours"]["probe_change"] == {"L0": 0.0, "L1": 0.0}
    assert stats["baseline"]["probe_change"]["L0"] > 1e-6
    assert stats["baseline"]["pixel_change_outside_region"] >= 0.0


def test_compare_report_schema(two_checkpoints, tmp_path):
    report = compare_models(two_checkpoints, [_edit_pair()], tmp_path / "cmp")
    assert sorted(report) == ["models", "pairs"]
    pair = report["pairs"][0]
    assert sorted(pair) == ["index", "per_model", "reference_point", "region"]
    for stats in pair["per_model"].values():
        assert sorted(stats) == [
            "change_map",
            "output_base",
            "output_edited",
            "pixel_change_outside_region",
            "probe_change",
        ]
        assert Path(stats["change_map"]).exists()
    on_disk = json.load(open(tmp_path / "cmp" / "comparison.json"))
    assert on_disk == report


def test_compare_requires_region(two_checkpoints, tmp_path):
    pair = _edit_pair()
    del pair["region"]
    with pytest.raises(ValidationError, match="region"):
        compare_models(two_checkpoints, [pair], tmp_path / "cmp")
