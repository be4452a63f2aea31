"""Adversarial training loop: one discriminator step, one generator step per batch.

Sketches are augmented on the fly (translation/rotation); photos pass through
untouched.  Every step's losses stream to a line-delimited JSON log, and any
non-finite loss aborts the run with the offending step recorded.
"""

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import torch

from ..data.augment import augment_contour
from ..data.pngio import load_photo_png, load_sketch_png
from ..errors import TrainingAborted, ValidationError
from ..losses import (
    adversarial_loss,
    compose_objective,
    feature_matching_loss,
    perceptual_loss,
)
from ..models.discriminator import build_discriminator
from ..models.generator import build_generator
from ..perceptual import build_feature_extractor
from .checkpoint import save_checkpoint


class ManifestPairSource:
    """Loads (sketch, photo) pairs from manifest entries on demand."""

    def __init__(self, entries, image_size):
        if not entries:
            raise ValidationError("empty train split")
        self.entries = entries
        self.image_size = image_size

    def __len__(self):
        return len(self.entries)

    def load(self, i):
        e = self.entries[i]
        sketch = load_sketch_png(e.sketch_path)
        photo = load_photo_png(e.photo_path)
        if sketch.shape[0] != self.image_size or photo.shape[1] != self.image_size:
            raise ValidationError(
                f"{e.image_id}: file size {sketch.shape} does not match "
                f"configured image_size {self.image_size}"
            )
        return sketch, photo


class ArrayPairSource:
    """In-memory pairs; used by the estimator API."""

    def __init__(self, sketches, photos):
        if len(sketches) != len(photos) or len(sketches) == 0:
            raise ValidationError(
                f"need matching non-empty arrays, got {len(sketches)} sketches "
                f"and {len(photos)} photos"
            )
        self.sketches = sketches
        self.photos = photos

    def __len__(self):
        return len(self.sketches)

    def load(self, i):
        return self.sketches[i], self.photos[i]


@dataclass
class TrainResult:
    checkpoint_paths: list
    log_path: str
    steps: int
    generator: object
    discriminator: object


def _finite(x):
    return math.isfinite(x)


def train(cfg, manifest=None, out_dir="runs", source=None, dataset_hash=""):
    """Run the full training schedule; returns a TrainResult.

    Either a manifest (its train split is used) or an explicit pair source
    must be given.
    """
    torch.set_num_threads(cfg.num_threads)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    if source is None:
        if manifest is None:
            raise ValidationError("train needs a manifest or a pair source")
        manifest.validate()  # pre-flight: every referenced file exists
        source = ManifestPairSource(manifest.split("train"), cfg.image_size)
        dataset_hash = dataset_hash or manifest.content_hash()

    spec = cfg.generator_spec()
    generator = build_generator(spec, cfg.seed)
    discriminator = build_discriminator(cfg.seed + 1, base_width=cfg.discriminator_width)
    extractor = build_feature_extractor(
        cfg.perceptual_mode,
        weights_path=cfg.perceptual_weights or None,
        seed=cfg.seed + 2,
        base_width=cfg.perceptual_width,
    )
    generator.train()
    discriminator.train()

    opt_g = torch.optim.Adam(
        generator.parameters(), lr=cfg.learning_rate, betas=(cfg.beta1, cfg.beta2)
    )
    opt_d = torch.optim.Adam(
        discriminator.parameters(), lr=cfg.learning_rate, betas=(cfg.beta1, cfg.beta2)
    )

    policy = cfg.augment_policy()
    order_rng = np.random.default_rng(cfg.seed)
    augment_rng = np.random.default_rng(cfg.seed + 3)

    log_path = out_dir / "training_log.jsonl"
    checkpoints = []
    step = 0
    n = len(source)
    with open(log_path, "w", encoding="utf-8") as log:
        for _epoch in range(cfg.epochs):
            order = order_rng.permutation(n)
            for start in range(0, n, cfg.batch_size):
                batch_idx = order[start:start + cfg.batch_size]
                sketches, photos = [], []
                for i in batch_idx:
                    sketch, photo = source.load(int(i))
                    sketch, _ = augment_contour(sketch, policy, augment_rng)
                    sketches.append(sketch)
                    photos.append(photo)
                s = torch.from_numpy(np.stack(sketches))[:, None]
                p = torch.from_numpy(np.stack(photos))
                step += 1

                fake = generator(s)

                # discriminator step
                outs_real = discriminator(s, p)
                outs_fake_d = discriminator(s, fake.detach())
                l_gan_d = adversarial_loss(
                    [o[0] for o in outs_real], [o[0] for o in outs_fake_d], "discriminator"
                )
                opt_d.zero_grad()
                l_gan_d.backward()
                opt_d.step()

                # generator step against the updated discriminator
                with torch.no_grad():
                    outs_real_fm = discriminator(s, p)
                outs_fake = discriminator(s, fake)
                l_gan_g = adversarial_loss(None, [o[0] for o in outs_fake], "generator")
                fm_per_scale = feature_matching_loss(
                    [o[1] for o in outs_real_fm], [o[1] for o in outs_fake]
                )
                l_vgg = perceptual_loss(p, fake, extractor)
                total_g = l_gan_g + cfg.lambda_weight * (
                    sum(fm_per_scale) / len(fm_per_scale) + l_vgg
                )
                opt_g.zero_grad()
                total_g.backward()
                opt_g.step()

                parts = {
                    "l_gan_g": l_gan_g.item(),
                    "l_gan_d": l_gan_d.item(),
                    "fm": [v.item() for v in fm_per_scale],
                    "l_vgg": l_vgg.item(),
                }
                if not all(
                    _finite(v)
                    for v in (parts["l_gan_g"], parts["l_gan_d"], parts["l_vgg"], *parts["fm"])
                ):
                    log.write(json.dumps({"step": step, "event": "abort", "losses": parts}) + "\n")
                    raise TrainingAborted(step, f"non-finite loss at step {step}: {parts}")
                report = compose_objective(
                    parts["l_gan_g"], parts["l_gan_d"], parts["fm"], parts["l_vgg"],
                    cfg.lambda_weight,
                )
                log.write(json.dumps(report.to_log_entry(step)) + "\n")

                if cfg.checkpoint_every and step % cfg.checkpoint_every == 0:
                    checkpoints.append(
                        save_checkpoint(
                            out_dir / f"ckpt_{step:06d}.pt",
                            generator,
                            discriminator,
                            seed=cfg.seed,
                            step=step,
                            dataset_hash=dataset_hash,
                            discriminator_width=cfg.discriminator_width,
                        )
                    )

    generator.eval()
    discriminator.eval()
    checkpoints.append(
        save_checkpoint(
            out_dir / f"ckpt_{step:06d}.pt",
            generator,
            discriminator,
            seed=cfg.seed,
            step=step,
            dataset_hash=dataset_hash,
            discriminator_width=cfg.discriminator_width,
        )
    )
    return TrainResult(
        checkpoint_paths=[str(p) for p in checkpoints],
        log_path=str(log_path),
        steps=step,
        generator=generator,
        discriminator=discriminator,
    )


def read_log(log_path):
    with open(log_path, "r", encoding="utf-8") as fh:
        return [json.loads(line) for line in fh if line.strip()]
