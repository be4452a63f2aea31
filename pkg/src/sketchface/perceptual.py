"""Fixed five-stage convolutional feature extractor for the perceptual loss.

The topology mirrors a VGG19 feature stack cut after the first activation of
each of its five blocks.  Weights either come from a local pretrained file
(torchvision ``vgg19.features`` layout) or from a fixed-seed random
initialization, so the full test suite runs without downloads.
"""

from pathlib import Path

import torch
from torch import nn

from .errors import ConfigurationError

# conv channel plan per stage, as (in, out) multiples of base_width (=64 for VGG19)
_STAGE_PLAN = [
    [(None, 1)],                       # conv1_1
    [(1, 1), "pool", (1, 2)],          # conv1_2, pool, conv2_1
    [(2, 2), "pool", (2, 4)],          # conv2_2, pool, conv3_1
    [(4, 4), (4, 4), (4, 4), "pool", (4, 8)],   # conv3_2..3_4, pool, conv4_1
    [(8, 8), (8, 8), (8, 8), "pool", (8, 8)],   # conv4_2..4_4, pool, conv5_1
]

# torchvision vgg19.features indices of the 13 convolutions used here
_VGG19_CONV_INDICES = [0, 2, 5, 7, 10, 12, 14, 16, 19, 21, 23, 25, 28]


class FeatureExtractor(nn.Module):
    """Frozen 5-stage feature pyramid; returns one tensor per stage."""

    def __init__(self, input_channels=3, base_width=64):
        super().__init__()
        self.base_width = base_width
        stages = []
        for plan in _STAGE_PLAN:
            ops = []
            for item in plan:
                if item == "pool":
                    ops.append(nn.MaxPool2d(2, 2))
                    continue
                cin, cout = item
                cin = input_channels if cin is None else cin * base_width
                ops += [nn.Conv2d(cin, cout * base_width, 3, padding=1), nn.ReLU(True)]
            stages.append(nn.Sequential(*ops))
        self.stages = nn.ModuleList(stages)
        self.requires_grad_(False)
        self.eval()

    def forward(self, x):
        outputs = []
        for stage in self.stages:
            x = stage(x)
            outputs.append(x)
        return outputs

    def _conv_layers(self):
        return [m for m in self.modules() if isinstance(m, nn.Conv2d)]


def build_feature_extractor(mode="random_fixed", weights_path=None, seed=0, base_width=64):
    """Construct the frozen extractor.

    mode="pretrained" loads a local torchvision-format vgg19 state dict from
    ``weights_path``; mode="random_fixed" initializes from ``seed`` so results
    are reproducible offline.
    """
    extractor = FeatureExtractor(base_width=base_width)
    if mode == "pretrained":
        if base_width != 64:
            raise ConfigurationError("pretrained weights require base_width=64")
        if weights_path is None or not Path(weights_path).exists():
            raise ConfigurationError(
                "perceptual mode 'pretrained' needs an existing local weights file; "
                "use mode 'random_fixed' for offline runs"
            )
        state = torch.load(weights_path, map_location="cpu", weights_only=True)
        _load_vgg19_features(extractor, state)
    elif mode == "random_fixed":
        gen = torch.Generator().manual_seed(seed)
        with torch.no_grad():
            for conv in extractor._conv_layers():
                conv.weight.copy_(torch.randn(conv.weight.shape, generator=gen) * 0.02)
                conv.bias.zero_()
    else:
        raise ConfigurationError(f"unknown perceptual mode {mode!r}")
    extractor.requires_grad_(False)
    extractor.eval()
    return extractor


def _load_vgg19_features(extractor, state):
    convs = extractor._conv_layers()
    with torch.no_grad():
        for conv, idx in zip(convs, _VGG19_CONV_INDICES):
            for attr, suffix in ((conv.weight, "weight"), (conv.bias, "bias")):
                key = f"features.{idx}.{suffix}"
                if key not in state:  # plain vgg19.features state dict
                    key = f"{idx}.{suffix}"
                attr.copy_(state[key])
