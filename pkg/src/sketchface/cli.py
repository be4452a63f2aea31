"""Command-line surface: forge (data), probe (analysis), train/evaluate/compare,
and studio (HTTP service)."""

import json
import os
from dataclasses import replace
from pathlib import Path

import click
import numpy as np

from .data.augment import AugmentPolicy, augment_contour, average_face
from .data.contours import render_contour
from .data.landmarks import load_landmarks
from .data.manifest import DatasetManifest, build_manifest
from .data.pngio import load_sketch_png, save_sketch_png
from .data.synthetic import FaceParams, face_landmarks
from .models.generator import GeneratorSpec, build_generator
from .probe.collect import collect_probe_vectors
from .probe.groups import generate_synthetic_probe_groups
from .probe.pca import pca_project, within_group_dispersion
from .probe.scatter import emit_scatter
from .train.checkpoint import load_generator
from .train.config import TrainConfig
from .train.evaluate import compare_models, evaluate as run_evaluate
from .train.trainer import train as run_train


def _parse_layers(text):
    if ".." in text:
        lo, hi = text.split("..")
        return list(range(int(lo), int(hi) + 1))
    return [int(v) for v in text.split(",") if v.strip()]


# --------------------------------------------------------------------- forge

@click.group()
def forge():
    """Build paired training data from photos and landmark files."""


@forge.command("render")
@click.option("--landmarks", "landmark_dir", required=True, type=click.Path(exists=True))
@click.option("--out", "out_dir", required=True, type=click.Path())
@click.option("--size", default=512, show_default=True)
@click.option("--frame", default=None, type=int, help="source coordinate frame side")
def forge_render(landmark_dir, out_dir, size, frame):
    """Render 68-point landmark files into two-pixel contour sketches."""
    landmark_dir, out_dir = Path(landmark_dir), Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    count = 0
    for path in sorted(landmark_dir.iterdir()):
        if path.suffix.lower() not in (".json", ".txt"):
            continue
        sketch = render_contour(load_landmarks(path), size, frame_size=frame)
        save_sketch_png(out_dir / f"{path.stem}.png", sketch)
        count += 1
    click.echo(f"rendered {count} contours to {out_dir}")


@forge.command("augment")
@click.option("--sketches", "sketch_dir", required=True, type=click.Path(exists=True))
@click.option("--out", "out_dir", required=True, type=click.Path())
@click.option("--d", default=25.0, show_default=True, help="max offset, pixels")
@click.option("--theta", default=7.0, show_default=True, help="max rotation, degrees")
@click.option("--seed", default=0, show_default=True)
def forge_augment(sketch_dir, out_dir, d, theta, seed):
    """Apply random translation/rotation to contour sketches (photos untouched)."""
    policy = AugmentPolicy(d=d, theta=theta, rng_seed=seed)
    rng = policy.rng()
    sketch_dir, out_dir = Path(sketch_dir), Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    applied = {}
    for path in sorted(sketch_dir.glob("*.png")):
        sketch = load_sketch_png(path)
        augmented, params = augment_contour(sketch, policy, rng)
        save_sketch_png(out_dir / path.name, augmented)
        applied[path.stem] = params
    with open(out_dir / "applied.json", "w", encoding="utf-8") as fh:
        json.dump(applied, fh, indent=2)
    click.echo(f"augmented {len(applied)} sketches to {out_dir}")


@forge.command("average-face")
@click.option("--sketches", "sketch_dir", required=True, type=click.Path(exists=True))
@click.option("--out", "out_path", required=True, type=click.Path())
def forge_average_face(sketch_dir, out_path):
    """Pixel-wise mean of all sketches (dataset alignment diagnostic)."""
    paths = sorted(Path(sketch_dir).glob("*.png"))
    avg = average_face([load_sketch_png(p) for p in paths])
    save_sketch_png(out_path, avg)
    click.echo(f"averaged {len(paths)} sketches into {out_path}")


@forge.command("manifest")
@click.option("--photos", "photo_dir", required=True, type=click.Path(exists=True))
@click.option("--landmarks", "landmark_dir", required=True, type=click.Path(exists=True))
@click.option("--sketches", "sketch_dir", required=True, type=click.Path(exists=True))
@click.option("--split", default=0.75, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--train-count", default=None, type=int, help="fixed train count override")
@click.option("--out", "out_path", default="manifest.json", show_default=True)
def forge_manifest(photo_dir, landmark_dir, sketch_dir, split, seed, train_count, out_path):
    """Pair photos with valid landmarks and sketches; write the split manifest."""
    manifest = build_manifest(
        photo_dir, landmark_dir, sketch_dir,
        split_ratio=split, seed=seed, train_count=train_count,
    )
    manifest.save(out_path)
    click.echo(f"manifest: {manifest.counts} -> {out_path}")


# --------------------------------------------------------------------- probe

@click.group()
def probe():
    """Feature-embedding analysis of a generator checkpoint."""


@probe.command("run")
@click.option("--checkpoint", default=None, type=click.Path(exists=True))
@click.option("--random-seed", default=None, type=int,
              help="probe a randomly initialized generator instead of a checkpoint")
@click.option("--norm-free-prefix", default=2, show_default=True)
@click.option("--base-channels", default=48, show_default=True)
@click.option("--groups", default="synthetic", show_default=True)
@click.option("--n-per-group", default=18, show_default=True)
@click.option("--size", default=512, show_default=True, help="probe sketch resolution")
@click.option("--layers", default="0..4", show_default=True)
@click.option("--point", default="auto", show_default=True, help="'auto' or 'x,y'")
@click.option("--out", "out_dir", required=True, type=click.Path())
def probe_run(checkpoint, random_seed, norm_free_prefix, base_channels, groups,
              n_per_group, size, layers, point, out_dir):
    """Collect probe vectors, project with PCA, and emit scatter plots."""
    if groups != "synthetic":
        raise click.UsageError("only the synthetic probe-group generator is available")
    layer_list = _parse_layers(layers)
    if not layer_list:
        raise click.UsageError("empty layer selection")
    if checkpoint:
        generator, _ = load_generator(checkpoint)
    elif random_seed is not None:
        spec = GeneratorSpec(
            base_channels=base_channels, norm_free_prefix=norm_free_prefix
        )
        generator = build_generator(spec, seed=random_seed)
    else:
        raise click.UsageError("need --checkpoint or --random-seed")

    suite = generate_synthetic_probe_groups(n_per_group=n_per_group, size=size)
    pt = None if point == "auto" else tuple(int(v) for v in point.split(","))
    vector_sets = collect_probe_vectors(generator, suite, point=pt, layers=layer_list)

    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    report = []
    for layer, vs in sorted(vector_sets.items()):
        proj = pca_project(vs.vectors)
        labels = [gid for gid, _ in vs.labels]
        emit_scatter(proj, labels, out_dir / f"layer{layer}.svg", title=f"L{layer}")
        by_group_2d = {g: proj.points[[i for i, l in enumerate(labels) if l == g]]
                       for g in sorted(set(labels))}
        by_group_raw = {g: vs.group_rows(g) for g in sorted(set(labels))}
        disp2d = within_group_dispersion(by_group_2d)
        dispraw = within_group_dispersion(by_group_raw)
        for g in sorted(set(labels)):
            report.append(
                {
                    "layer": layer,
                    "group": g,
                    "dispersion_2d": disp2d[g],
                    "dispersion_raw": dispraw[g],
                }
            )
    with open(out_dir / "report.json", "w", encoding="utf-8") as fh:
        json.dump(report, fh, indent=2)
    click.echo(f"probe report and {len(vector_sets)} scatter plots in {out_dir}")


# ------------------------------------------------------- train/evaluate/compare

@click.command("train")
@click.option("--config", "config_path", required=True, type=click.Path(exists=True))
@click.option("--manifest", "manifest_path", required=True, type=click.Path(exists=True))
@click.option("--out", "out_dir", default="runs", show_default=True)
def train_command(config_path, manifest_path, out_dir):
    """Train a (generator, discriminator) pair from a key-value config file."""
    cfg = TrainConfig.from_file(config_path)
    manifest = DatasetManifest.load(manifest_path)
    result = run_train(cfg, manifest, out_dir=out_dir)
    click.echo(
        f"finished {result.steps} steps; checkpoints: "
        f"{', '.join(result.checkpoint_paths)}"
    )


@click.command("evaluate")
@click.option("--checkpoint", required=True, type=click.Path(exists=True))
@click.option("--manifest", "manifest_path", required=True, type=click.Path(exists=True))
@click.option("--out", "out_dir", required=True, type=click.Path())
@click.option("--split", default="test", show_default=True)
def evaluate_command(checkpoint, manifest_path, out_dir, split):
    """Generate images for every test sketch and write a summary JSON."""
    manifest = DatasetManifest.load(manifest_path)
    summary = run_evaluate(checkpoint, manifest, out_dir, split=split)
    click.echo(f"evaluated {len(summary['entries'])} images into {out_dir}")


def _demo_edit_pairs(size):
    """Built-in nose- and mouth-edited sketch pairs from the template."""
    base = FaceParams()
    pairs = []
    for attr, delta, region_of in (
        ("nose_length", 0.025, "nose"),
        ("mouth_width", 0.02, "mouth"),
    ):
        edited = replace(base, **{attr: getattr(base, attr) + delta})
        lm_a = face_landmarks(base, size)
        lm_b = face_landmarks(edited, size)
        moved = np.abs(lm_a - lm_b).sum(axis=1) > 1e-9
        pts = np.concatenate([lm_a[moved], lm_b[moved]])
        region = (
            float(pts[:, 0].min()), float(pts[:, 1].min()),
            float(pts[:, 0].max()), float(pts[:, 1].max()),
        )
        pairs.append(
            {
                "sketch": render_contour(lm_a, size),
                "sketch_edited": render_contour(lm_b, size),
                "region": region,
                "name": region_of,
            }
        )
    return pairs


@click.command("compare")
@click.option("--baseline", required=True, type=click.Path(exists=True))
@click.option("--ours", required=True, type=click.Path(exists=True))
@click.option("--m1", default=None, type=click.Path(exists=True))
@click.option("--size", default=512, show_default=True)
@click.option("--out", "out_dir", default="comparison", show_default=True)
def compare_command(baseline, ours, m1, size, out_dir):
    """Compare checkpoints on locally edited sketches; report out-of-region change."""
    checkpoints = {"baseline": baseline, "ours": ours}
    if m1:
        checkpoints["m1"] = m1
    report = compare_models(checkpoints, _demo_edit_pairs(size), out_dir)
    click.echo(json.dumps(report["pairs"], indent=2))


# -------------------------------------------------------------------- studio

@click.group()
def studio():
    """Interactive sketch studio service."""


@studio.command("serve")
@click.option("--registry", "registry_path", required=True, type=click.Path(exists=True))
@click.option("--port", default=8700, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
def studio_serve(registry_path, port, host):
    """Serve generation/probe endpoints for the registered checkpoints."""
    import uvicorn

    from .service.app import create_app
    from .service.registry import ModelRegistry

    port = int(os.environ.get("STUDIO_PORT", port))
    app = create_app(ModelRegistry.from_file(registry_path))
    uvicorn.run(app, host=host, port=port)


# convenience for `python -m sketchface.cli`
@click.group()
def main():
    pass


for _cmd in (forge, probe, studio, train_command, evaluate_command, compare_command):
    main.add_command(_cmd)


if __name__ == "__main__":
    main()
