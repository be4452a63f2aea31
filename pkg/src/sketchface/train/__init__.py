from .checkpoint import (
    load_discriminator,
    load_generator,
    load_metadata,
    save_checkpoint,
    sidecar_path,
)
from .config import TrainConfig
from .evaluate import compare_models, evaluate
from .trainer import ArrayPairSource, ManifestPairSource, TrainResult, read_log, train

__all__ = [
    "ArrayPairSource",
    "ManifestPairSource",
    "TrainConfig",
    "TrainResult",
    "compare_models",
    "evaluate",
    "load_discriminator",
    "load_generator",
    "load_metadata",
    "read_log",
    "save_checkpoint",
    "sidecar_path",
    "train",
]
