"""Checkpoint save/load: parameter blob plus a JSON metadata sidecar."""

import json
from pathlib import Path

import torch

from ..errors import ConfigurationError
from ..models.discriminator import MultiScaleDiscriminator
from ..models.generator import Generator, GeneratorSpec

FORMAT_VERSION = 1


def sidecar_path(checkpoint_path):
    return Path(checkpoint_path).with_suffix(".json")


def save_checkpoint(path, generator, discriminator=None, *, seed=0, step=0,
                    dataset_hash="", discriminator_width=64):
    """Write the parameter blob to ``path`` and metadata to the JSON sidecar."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    blob = {
        "format_version": FORMAT_VERSION,
        "generator": generator.state_dict(),
        "discriminator": discriminator.state_dict() if discriminator else None,
        "discriminator_width": discriminator_width,
    }
    torch.save(blob, path)
    meta = {
        "spec": generator.spec.to_dict(),
        "seed": int(seed),
        "step": int(step),
        "dataset_hash": dataset_hash,
        "format_version": FORMAT_VERSION,
    }
    with open(sidecar_path(path), "w", encoding="utf-8") as fh:
        json.dump(meta, fh, indent=2)
    return path


def load_metadata(path):
    side = sidecar_path(path)
    if not side.exists():
        raise ConfigurationError(f"checkpoint sidecar missing: {side}")
    with open(side, "r", encoding="utf-8") as fh:
        meta = json.load(fh)
    if meta.get("format_version") != FORMAT_VERSION:
        raise ConfigurationError(
            f"unsupported checkpoint format {meta.get('format_version')!r}"
        )
    return meta


def load_generator(path):
    """Rebuild the generator from a checkpoint; returns (generator, metadata)."""
    meta = load_metadata(path)
    blob = torch.load(path, map_location="cpu", weights_only=True)
    spec = GeneratorSpec.from_dict(meta["spec"])
    g = Generator(spec)
    g.load_state_dict(blob["generator"])
    g.eval()
    return g, meta


def load_discriminator(path):
    blob = torch.load(path, map_location="cpu", weights_only=True)
    if blob.get("discriminator") is None:
        return None
    d = MultiScaleDiscriminator(base_width=blob.get("discriminator_width", 64))
    d.load_state_dict(blob["discriminator"])
    d.eval()
    return d
