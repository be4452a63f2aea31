"""Checkpoint evaluation and model comparison on edited sketch pairs."""

import json
from pathlib import Path

import numpy as np

from ..data.pngio import load_photo_png, load_sketch_png, save_photo_png, save_sketch_png
from ..errors import ShapeError, ValidationError
from ..models.generator import generator_forward, probe_vector
from ..probe.collect import double_precision_encoder, encoder_layer_features
from ..probe.receptive import PROBE_BORDER_MARGIN
from .checkpoint import load_generator

REGION_DILATION = 16  # pixels added around the edited bbox before measuring


def evaluate(checkpoint_path, manifest, out_dir, split="test"):
    """Generate one image per test sketch; write PNGs and a summary JSON."""
    generator, meta = load_generator(checkpoint_path)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    entries = manifest.split(split)
    if not entries:
        raise ValidationError(f"manifest has no {split!r} entries")
    summary = {"checkpoint": str(checkpoint_path), "split": split, "entries": []}
    divisor = generator.spec.size_divisor
    for e in entries:
        sketch = load_sketch_png(e.sketch_path)
        if sketch.shape[0] % divisor != 0:
            raise ShapeError(
                f"{e.image_id}: resolution {sketch.shape} incompatible with "
                f"checkpoint spec (needs multiple of {divisor})"
            )
        output = generator_forward(generator, sketch)
        photo = load_photo_png(e.photo_path)
        out_path = out_dir / f"{e.image_id}.png"
        save_photo_png(out_path, output)
        summary["entries"].append(
            {
                "image_id": e.image_id,
                "output_path": str(out_path),
                "l1_to_ground_truth": float(np.abs(output - photo).mean()),
            }
        )
    with open(out_dir / "summary.json", "w", encoding="utf-8") as fh:
        json.dump(summary, fh, indent=2)
    return summary


def _outside_mask(shape, region, dilation=REGION_DILATION):
    x0, y0, x1, y1 = region
    h, w = shape
    mask = np.ones((h, w), dtype=bool)
    ys = slice(max(0, int(y0) - dilation), min(h, int(y1) + dilation + 1))
    xs = slice(max(0, int(x0) - dilation), min(w, int(x1) + dilation + 1))
    mask[ys, xs] = False
    return mask


def _reference_point(shape, region):
    """Deterministic interior probe point far from the edited region."""
    h, w = shape
    m = PROBE_BORDER_MARGIN + 1
    candidates = [(x, y) for x in (m, w - 1 - m) for y in (m, h - 1 - m)]
    cx, cy = (region[0] + region[2]) / 2.0, (region[1] + region[3]) / 2.0
    return max(candidates, key=lambda p: (p[0] - cx) ** 2 + (p[1] - cy) ** 2)


def compare_models(checkpoint_paths, sketch_pairs, out_dir):
    """Compare models on locally edited sketch pairs.

    ``checkpoint_paths`` maps a display name (baseline/ours/m1/...) to a
    checkpoint.  Each pair is a dict with ``sketch``, ``sketch_edited`` (H, W)
    arrays and ``region`` = (x0, y0, x1, y1), the edited bounding box.  For
    every model the report carries the mean absolute pixel change outside the
    dilated region and the L0/L1 probe-vector change at a reference point far
    from the edit.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    models = {name: load_generator(path) for name, path in checkpoint_paths.items()}
    sizes = {g.spec.size_divisor for g, _ in models.values()}
    if len(sizes) != 1:
        raise ValidationError("checkpoints disagree on architecture downsampling")

    report = {
        "models": {name: str(path) for name, path in checkpoint_paths.items()},
        "pairs": [],
    }
    for idx, pair in enumerate(sketch_pairs):
        if "region" not in pair:
            raise ValidationError(f"pair {idx}: edit region annotation missing")
        s_a = np.asarray(pair["sketch"], dtype=np.float32)
        s_b = np.asarray(pair["sketch_edited"], dtype=np.float32)
        if s_a.shape != s_b.shape:
            raise ShapeError(f"pair {idx}: sketch sizes differ")
        region = tuple(float(v) for v in pair["region"])
        outside = _outside_mask(s_a.shape, region)
        ref_point = _reference_point(s_a.shape, region)
        entry = {
            "index": idx,
            "region": list(region),
            "reference_point": list(ref_point),
            "per_model": {},
        }
        for name, (generator, _meta) in models.items():
            img_a = generator_forward(generator, s_a)
            img_b = generator_forward(generator, s_b)
            path_a = out_dir / f"pair{idx}_{name}_base.png"
            path_b = out_dir / f"pair{idx}_{name}_edited.png"
            save_photo_png(path_a, img_a)
            save_photo_png(path_b, img_b)
            change = np.abs(img_b - img_a).mean(axis=0)
            change_path = out_dir / f"pair{idx}_{name}_change.png"
            save_sketch_png(change_path, np.clip(change / 2.0, 0.0, 1.0))
            encoder = double_precision_encoder(generator)
            probe_change = {}
            for layer in (0, 1):
                fa = encoder_layer_features(encoder, s_a, layer, generator.spec)
                fb = encoder_layer_features(encoder, s_b, layer, generator.spec)
                va = probe_vector(fa, ref_point)
                vb = probe_vector(fb, ref_point)
                probe_change[f"L{layer}"] = float(np.abs(va - vb).max())
            entry["per_model"][name] = {
                "pixel_change_outside_region": float(change[outside].mean()),
                "probe_change": probe_change,
                "output_base": str(path_a),
                "output_edited": str(path_b),
                "change_map": str(change_path),
            }
        report["pairs"].append(entry)
    with open(out_dir / "comparison.json", "w", encoding="utf-8") as fh:
        json.dump(report, fh, indent=2)
    return report
