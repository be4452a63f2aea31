"""Dataset manifests: paired sketch/photo/landmark files with a train/test split."""

import hashlib
import json
import logging
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from ..errors import ValidationError
from .landmarks import load_landmarks

logger = logging.getLogger(__name__)

PHOTO_SUFFIXES = (".png", ".jpg", ".jpeg")
LANDMARK_SUFFIXES = (".json", ".txt")


@dataclass(frozen=True)
class ManifestEntry:
    image_id: str
    sketch_path: str
    photo_path: str
    landmark_path: str
    split: str  # "train" | "test"


@dataclass
class DatasetManifest:
    entries: list

    def split(self, name):
        return [e for e in self.entries if e.split == name]

    @property
    def counts(self):
        return {
            "train": len(self.split("train")),
            "test": len(self.split("test")),
        }

    def to_dict(self):
        return {"entries": [asdict(e) for e in self.entries], "counts": self.counts}

    @classmethod
    def from_dict(cls, d):
        entries = [ManifestEntry(**e) for e in d["entries"]]
        m = cls(entries=entries)
        m.validate()
        return m

    def validate(self):
        seen = {}
        for e in self.entries:
            if e.split not in ("train", "test"):
                raise ValidationError(f"{e.image_id}: unknown split {e.split!r}")
            if e.image_id in seen and seen[e.image_id] != e.split:
                raise ValidationError(f"{e.image_id} appears in both splits")
            seen[e.image_id] = e.split
            for p in (e.sketch_path, e.photo_path, e.landmark_path):
                if not Path(p).exists():
                    raise ValidationError(f"{e.image_id}: missing file {p}")
        return self

    def save(self, path):
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_dict(), fh, indent=2)

    @classmethod
    def load(cls, path):
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))

    def content_hash(self):
        """Stable hash of the manifest content, recorded in checkpoints."""
        payload = json.dumps(self.to_dict(), sort_keys=True).encode()
        return hashlib.sha256(payload).hexdigest()


def _find_by_stem(directory, stem, suffixes):
    for suffix in suffixes:
        p = Path(directory) / f"{stem}{suffix}"
        if p.exists():
            return p
    return None


def build_manifest(photo_dir, landmark_dir, sketch_dir, split_ratio=0.75, seed=0,
                   train_count=None):
    """Pair photos with valid landmark files and rendered sketches.

    Photos whose landmark file is missing or unreadable are skipped with a
    logged warning.  The split is a deterministic seeded shuffle;
    ``train_count`` overrides the ratio with a fixed count when set.
    """
    photo_dir, landmark_dir, sketch_dir = Path(photo_dir), Path(landmark_dir), Path(sketch_dir)
    for d in (photo_dir, landmark_dir, sketch_dir):
        if not d.is_dir():
            raise ValidationError(f"not a directory: {d}")

    candidates = []
    for photo in sorted(photo_dir.iterdir()):
        if photo.suffix.lower() not in PHOTO_SUFFIXES:
            continue
        stem = photo.stem
        lm_path = _find_by_stem(landmark_dir, stem, LANDMARK_SUFFIXES)
        if lm_path is None:
            logger.warning("no landmark file for %s, skipping", stem)
            continue
        try:
            load_landmarks(lm_path)
        except (ValidationError, OSError) as exc:
            logger.warning("unreadable landmarks for %s (%s), skipping", stem, exc)
            continue
        sketch_path = _find_by_stem(sketch_dir, stem, (".png",))
        if sketch_path is None:
            logger.warning("no rendered sketch for %s, skipping", stem)
            continue
        candidates.append((stem, sketch_path, photo, lm_path))

    order = np.random.default_rng(seed).permutation(len(candidates))
    if train_count is None:
        n_train = int(round(len(candidates) * split_ratio))
    else:
        n_train = min(int(train_count), len(candidates))
    entries = []
    for rank, idx in enumerate(order):
        stem, sketch_path, photo, lm_path = candidates[idx]
        entries.append(
            ManifestEntry(
                image_id=stem,
                sketch_path=str(sketch_path),
                photo_path=str(photo),
                landmark_path=str(lm_path),
                split="train" if rank < n_train else "test",
            )
        )
    entries.sort(key=lambda e: e.image_id)
    return DatasetManifest(entries=entries).validate()
