"""Encoder-resnet-decoder generator with a configurable normalization-free prefix.

The encoder is a 7x7 stride-1 convolution followed by ``n_downsample``
stride-2 3x3 convolutions (layers L0..L4 with defaults).  The first
``norm_free_prefix`` encoder convolutions carry no normalization; the rest,
the residual trunk, and the transposed-convolution decoder use instance
normalization with per-sample statistics.  norm_free_prefix=0 is the fully
normalized baseline, 2 keeps local shape information flowing through the
front end, and n_downsample+1 strips the whole encoder.
"""

from dataclasses import dataclass

import numpy as np
import torch
from torch import nn

from ..errors import ConfigurationError, ShapeError, ValidationError
from ..validation import check_point_in_bounds, check_sketch
from .initialization import reset_parameters
from .norm import EPS


@dataclass(frozen=True)
class GeneratorSpec:
    """Architecture hyperparameters for the generator."""

    base_channels: int = 48
    n_downsample: int = 4
    n_resblocks: int = 9
    norm_free_prefix: int = 2
    input_channels: int = 1
    output_channels: int = 3

    def __post_init__(self):
        if self.base_channels < 1 or self.n_downsample < 1 or self.n_resblocks < 0:
            raise ConfigurationError(f"invalid generator spec: {self}")
        if not 0 <= self.norm_free_prefix <= self.n_downsample + 1:
            raise ConfigurationError(
                f"norm_free_prefix must be in 0..{self.n_downsample + 1}, "
                f"got {self.norm_free_prefix}"
            )

    @property
    def n_encoder_layers(self):
        return self.n_downsample + 1

    @property
    def size_divisor(self):
        return 2 ** self.n_downsample

    def width(self, layer_index):
        """Channel count of encoder layer L{layer_index}."""
        if not 0 <= layer_index <= self.n_downsample:
            raise ValidationError(
                f"layer index {layer_index} out of range 0..{self.n_downsample}"
            )
        return self.base_channels * 2 ** layer_index

    def stride(self, layer_index):
        """Cumulative downsampling of layer L{layer_index} relative to the input."""
        if not 0 <= layer_index <= self.n_downsample:
            raise ValidationError(
                f"layer index {layer_index} out of range 0..{self.n_downsample}"
            )
        return 2 ** layer_index if layer_index > 0 else 1

    def to_dict(self):
        return {
            "base_channels": self.base_channels,
            "n_downsample": self.n_downsample,
            "n_resblocks": self.n_resblocks,
            "norm_free_prefix": self.norm_free_prefix,
            "input_channels": self.input_channels,
            "output_channels": self.output_channels,
        }

    @classmethod
    def from_dict(cls, d):
        return cls(**{k: int(v) for k, v in d.items()})


@dataclass
class FeatureMap:
    """Post-activation output of one encoder layer."""

    layer_index: int
    values: np.ndarray  # (C, H_l, W_l)
    stride_to_input: int

    @property
    def channels(self):
        return self.values.shape[0]

    @property
    def input_size(self):
        return self.values.shape[1] * self.stride_to_input


class ResidualBlock(nn.Module):
    def __init__(self, dim):
        super().__init__()
        self.block = nn.Sequential(
            nn.ReflectionPad2d(1),
            nn.Conv2d(dim, dim, kernel_size=3),
            nn.InstanceNorm2d(dim, eps=EPS, affine=True),
            nn.ReLU(True),
            nn.ReflectionPad2d(1),
            nn.Conv2d(dim, dim, kernel_size=3),
            nn.InstanceNorm2d(dim, eps=EPS, affine=True),
        )

    def forward(self, x):
        return x + self.block(x)


def _encoder_block(spec, layer_index):
    """One encoder stage: conv (+ instance norm past the prefix) + ReLU."""
    layers = []
    if layer_index == 0:
        layers += [
            nn.ReflectionPad2d(3),
            nn.Conv2d(spec.input_channels, spec.width(0), kernel_size=7),
        ]
    else:
        layers.append(
            nn.Conv2d(
                spec.width(layer_index - 1),
                spec.width(layer_index),
                kernel_size=3,
                stride=2,
                padding=1,
            )
        )
    if layer_index >= spec.norm_free_prefix:
        layers.append(nn.InstanceNorm2d(spec.width(layer_index), eps=EPS, affine=True))
    layers.append(nn.ReLU(True))
    return nn.Sequential(*layers)


class Generator(nn.Module):
    """Sketch-to-photo generator.

    Takes sketches in [0, 1] (remapped to [-1, 1] internally) and produces
    3-channel photos in [-1, 1] at the input resolution.
    """

    def __init__(self, spec=None):
        super().__init__()
        self.spec = spec or GeneratorSpec()
        spec = self.spec

        self.encoder = nn.ModuleList(
            [_encoder_block(spec, i) for i in range(spec.n_encoder_layers)]
        )
        self.resnet = nn.Sequential(
            *[ResidualBlock(spec.width(spec.n_downsample)) for _ in range(spec.n_resblocks)]
        )
        decoder = []
        for i in range(spec.n_downsample, 0, -1):
            decoder += [
                nn.ConvTranspose2d(
                    spec.width(i),
                    spec.width(i - 1),
                    kernel_size=3,
                    stride=2,
                    padding=1,
                    output_padding=1,
                ),
                nn.InstanceNorm2d(spec.width(i - 1), eps=EPS, affine=True),
                nn.ReLU(True),
            ]
        decoder += [
            nn.ReflectionPad2d(3),
            nn.Conv2d(spec.width(0), spec.output_channels, kernel_size=7),
            nn.Tanh(),
        ]
        self.decoder = nn.Sequential(*decoder)

    def _check_input(self, x):
        if x.ndim != 4 or x.shape[1] != self.spec.input_channels:
            raise ShapeError(f"expected (N, {self.spec.input_channels}, H, W), got {tuple(x.shape)}")
        h, w = x.shape[2], x.shape[3]
        d = self.spec.size_divisor
        if h % d != 0 or w % d != 0:
            raise ShapeError(f"spatial size {h}x{w} not divisible by {d}")

    def encode(self, x, upto=None):
        """Run the encoder on sketches in [0, 1]; stop after layer ``upto``."""
        self._check_input(x)
        x = x * 2.0 - 1.0
        last = self.spec.n_downsample if upto is None else upto
        for i in range(last + 1):
            x = self.encoder[i](x)
        return x

    def forward(self, x):
        return self.decoder(self.resnet(self.encode(x)))


def build_generator(spec=None, seed=0):
    """Construct a generator with deterministic seeded initialization."""
    g = Generator(spec or GeneratorSpec())
    reset_parameters(g, seed)
    g.eval()
    return g


def generator_forward(generator, sketch):
    """Translate one sketch (H, W) in [0, 1] into a photo (3, H, W) in [-1, 1]."""
    spec = generator.spec
    arr = check_sketch(sketch, divisor=spec.size_divisor)
    dtype = next(generator.parameters()).dtype
    with torch.no_grad():
        t = torch.from_numpy(arr)[None, None].to(dtype)
        out = generator(t)
    return out[0].numpy()


def extract_features(generator, sketch, layer_index):
    """Post-activation feature map of encoder layer L{layer_index} for one sketch."""
    spec = generator.spec
    if not 0 <= layer_index <= spec.n_downsample:
        raise ValidationError(
            f"layer index {layer_index} out of range 0..{spec.n_downsample}"
        )
    arr = check_sketch(sketch, divisor=spec.size_divisor)
    dtype = next(generator.parameters()).dtype
    with torch.no_grad():
        t = torch.from_numpy(arr)[None, None].to(dtype)
        feats = generator.encode(t, upto=layer_index)
    return FeatureMap(
        layer_index=layer_index,
        values=feats[0].numpy(),
        stride_to_input=spec.stride(layer_index),
    )


def probe_vector(feature_map, point):
    """Feature vector at the input-pixel location ``point`` = (x, y)."""
    stride = feature_map.stride_to_input
    size = feature_map.input_size
    x, y = check_point_in_bounds(point, size, size, name="probe point")
    return feature_map.values[:, int(y) // stride, int(x) // stride].copy()
