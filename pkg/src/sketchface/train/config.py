"""Training configuration, readable from a flat key-value text file."""

import dataclasses
from dataclasses import dataclass
from pathlib import Path

from ..data.augment import AugmentPolicy
from ..errors import ConfigurationError
from ..models.generator import GeneratorSpec

# config-file key -> dataclass field where the names differ
_KEY_ALIASES = {"lambda": "lambda_weight"}


@dataclass
class TrainConfig:
    # generator architecture
    base_channels: int = 48
    n_downsample: int = 4
    n_resblocks: int = 9
    norm_free_prefix: int = 2
    # objective
    lambda_weight: float = 10.0
    perceptual_mode: str = "random_fixed"   # or "pretrained"
    perceptual_weights: str = ""            # local weights file for pretrained mode
    perceptual_width: int = 64
    # optimizer
    learning_rate: float = 2e-4
    beta1: float = 0.5
    beta2: float = 0.999
    # schedule
    batch_size: int = 1
    epochs: int = 1
    image_size: int = 512
    # augmentation (sketches only)
    augment_d: float = 25.0
    augment_theta: float = 7.0
    # bookkeeping
    seed: int = 0
    checkpoint_every: int = 0               # steps; 0 = final checkpoint only
    discriminator_width: int = 64
    num_threads: int = 1                    # fixed thread count keeps runs reproducible

    def __post_init__(self):
        if self.batch_size < 1:
            raise ConfigurationError(f"batch_size must be >= 1, got {self.batch_size}")
        if self.image_size % (2 ** self.n_downsample) != 0:
            raise ConfigurationError(
                f"image_size {self.image_size} not divisible by "
                f"{2 ** self.n_downsample}"
            )
        if self.lambda_weight < 0:
            raise ConfigurationError(f"lambda must be >= 0, got {self.lambda_weight}")
        if self.perceptual_mode not in ("pretrained", "random_fixed"):
            raise ConfigurationError(
                f"perceptual_mode must be pretrained|random_fixed, "
                f"got {self.perceptual_mode!r}"
            )
        self.generator_spec()  # validates the architecture fields

    def generator_spec(self):
        return GeneratorSpec(
            base_channels=self.base_channels,
            n_downsample=self.n_downsample,
            n_resblocks=self.n_resblocks,
            norm_free_prefix=self.norm_free_prefix,
        )

    def augment_policy(self):
        return AugmentPolicy(d=self.augment_d, theta=self.augment_theta, rng_seed=self.seed)

    @classmethod
    def from_file(cls, path):
        """Parse ``key = value`` lines; # starts a comment."""
        fields = {f.name: f for f in dataclasses.fields(cls)}
        values = {}
        for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigurationError(f"{path}:{lineno}: expected 'key = value'")
            key, _, value = line.partition("=")
            key = key.strip()
            key = _KEY_ALIASES.get(key, key)
            if key not in fields:
                raise ConfigurationError(f"{path}:{lineno}: unknown key {key!r}")
            ftype = fields[key].type
            value = value.strip()
            try:
                if ftype is int or ftype == "int":
                    values[key] = int(value)
                elif ftype is float or ftype == "float":
                    values[key] = float(value)
                else:
                    values[key] = value
            except ValueError as exc:
                raise ConfigurationError(f"{path}:{lineno}: {exc}") from exc
        return cls(**values)

    def to_file(self, path):
        inverse = {v: k for k, v in _KEY_ALIASES.items()}
        lines = []
        for f in dataclasses.fields(self):
            key = inverse.get(f.name, f.name)
            lines.append(f"{key} = {getattr(self, f.name)}")
        Path(path).write_text("\n".join(lines) + "\n")
