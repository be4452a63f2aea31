"""Sketch-to-face translation lab.

Models with a configurable normalization-free encoder prefix, the three-term
adversarial training objective, the landmark-contour data pipeline, a
feature-embedding probe suite, a training harness, and an HTTP studio
service.
"""

from .models import (
    FeatureMap,
    Generator,
    GeneratorSpec,
    MultiScaleDiscriminator,
    build_discriminator,
    build_generator,
    discriminate,
    extract_features,
    generator_forward,
    instance_normalize,
    probe_vector,
)

__version__ = "0.1.0"

__all__ = [
    "FeatureMap",
    "Generator",
    "GeneratorSpec",
    "MultiScaleDiscriminator",
    "SketchToFaceTranslator",
    "build_discriminator",
    "build_generator",
    "discriminate",
    "extract_features",
    "generator_forward",
    "instance_normalize",
    "probe_vector",
]


def __getattr__(name):
    # lazy: the estimator pulls in the training stack
    if name == "SketchToFaceTranslator":
        from .estimator import SketchToFaceTranslator

        return SketchToFaceTranslator
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")
