from .discriminator import (
    MultiScaleDiscriminator,
    PatchDiscriminator,
    build_discriminator,
    discriminate,
)
from .generator import (
    FeatureMap,
    Generator,
    GeneratorSpec,
    build_generator,
    extract_features,
    generator_forward,
    probe_vector,
)
from .norm import EPS, instance_normalize

__all__ = [
    "EPS",
    "FeatureMap",
    "Generator",
    "GeneratorSpec",
    "MultiScaleDiscriminator",
    "PatchDiscriminator",
    "build_discriminator",
    "build_generator",
    "discriminate",
    "extract_features",
    "generator_forward",
    "instance_normalize",
    "probe_vector",
]
