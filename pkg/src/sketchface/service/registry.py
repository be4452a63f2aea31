"""Model registry: named checkpoints loaded once at service startup."""

import json
import threading
from dataclasses import dataclass, field
from pathlib import Path

from ..errors import ConfigurationError
from ..probe.collect import double_precision_encoder
from ..train.checkpoint import load_generator

DEFAULT_QUEUE_DEPTH = 8


@dataclass
class RegisteredModel:
    model_id: str
    display_name: str
    checkpoint_path: str
    resolution: int
    generator: object
    metadata: dict
    lock: threading.Lock = field(default_factory=threading.Lock)
    queue_slots: threading.BoundedSemaphore = None
    _probe_encoder: object = None

    def probe_encoder(self):
        # built lazily; only /api/probe needs the double-precision copy
        if self._probe_encoder is None:
            with self.lock:
                if self._probe_encoder is None:
                    self._probe_encoder = double_precision_encoder(self.generator)
        return self._probe_encoder


class ModelRegistry:
    """Immutable-after-startup mapping of model ids to loaded generators.

    Every checkpoint loads eagerly; a broken entry aborts construction so the
    service refuses to start rather than 500 later.
    """

    def __init__(self, entries, queue_depth=DEFAULT_QUEUE_DEPTH):
        if not entries:
            raise ConfigurationError("registry has no models")
        self.queue_depth = queue_depth
        self.models = {}
        for entry in entries:
            model_id = entry["model_id"]
            if model_id in self.models:
                raise ConfigurationError(f"duplicate model_id {model_id!r}")
            generator, meta = load_generator(entry["checkpoint"])
            resolution = int(entry.get("resolution", 512))
            if resolution % generator.spec.size_divisor != 0:
                raise ConfigurationError(
                    f"{model_id}: resolution {resolution} incompatible with spec"
                )
            self.models[model_id] = RegisteredModel(
                model_id=model_id,
                display_name=entry.get("display_name", model_id),
                checkpoint_path=str(entry["checkpoint"]),
                resolution=resolution,
                generator=generator,
                metadata=meta,
                queue_slots=threading.BoundedSemaphore(queue_depth),
            )

    def get(self, model_id):
        return self.models.get(model_id)

    def ids(self):
        return sorted(self.models)

    @classmethod
    def from_file(cls, path):
        path = Path(path)
        try:
            data = json.loads(path.read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigurationError(f"unreadable registry {path}: {exc}") from exc
        if "models" not in data or not isinstance(data["models"], list):
            raise ConfigurationError(f"{path}: registry needs a 'models' list")
        entries = []
        for entry in data["models"]:
            entry = dict(entry)
            ckpt = Path(entry["checkpoint"])
            if not ckpt.is_absolute():
                ckpt = path.parent / ckpt
            entry["checkpoint"] = ckpt
            entries.append(entry)
        return cls(entries, queue_depth=int(data.get("queue_depth", DEFAULT_QUEUE_DEPTH)))
