"""Three-scale patch discriminator over (sketch, photo) pairs.

Each scale is a 4-layer patch classifier (kernel 4, strides 2/2/2/1,
leaky ReLU 0.2, instance normalization on all layers but the first) plus a
1-channel patch-logit head.  Scale k consumes the pair downsampled by
2^(k-1).  Every scale exposes its per-block intermediate features for the
feature-matching loss.
"""

import torch
from torch import nn
from torch.nn import functional as F

from ..errors import ShapeError
from ..validation import check_photo, check_sketch
from .initialization import reset_parameters
from .norm import EPS


class PatchDiscriminator(nn.Module):
    """Single-scale PatchGAN: returns (patch_logits, [block features])."""

    def __init__(self, input_channels=4, base_width=64):
        super().__init__()
        widths = [base_width * 2 ** i for i in range(4)]
        blocks = [
            nn.Sequential(
                nn.Conv2d(input_channels, widths[0], kernel_size=4, stride=2, padding=1),
                nn.LeakyReLU(0.2, True),
            )
        ]
        for i in range(1, 4):
            stride = 2 if i < 3 else 1
            blocks.append(
                nn.Sequential(
                    nn.Conv2d(widths[i - 1], widths[i], kernel_size=4, stride=stride, padding=1),
                    nn.InstanceNorm2d(widths[i], eps=EPS, affine=True),
                    nn.LeakyReLU(0.2, True),
                )
            )
        self.blocks = nn.ModuleList(blocks)
        self.head = nn.Conv2d(widths[3], 1, kernel_size=4, stride=1, padding=1)

    def forward(self, x):
        features = []
        for block in self.blocks:
            x = block(x)
            features.append(x)
        return self.head(x), features


class MultiScaleDiscriminator(nn.Module):
    """Stack of three patch discriminators over a downsampling pyramid."""

    n_scales = 3

    def __init__(self, input_channels=4, base_width=64):
        super().__init__()
        self.scales = nn.ModuleList(
            [PatchDiscriminator(input_channels, base_width) for _ in range(self.n_scales)]
        )

    def forward(self, sketch, photo):
        """Score a batch of pairs; sketch in [0, 1], photo in [-1, 1].

        Returns a list of (patch_logits, features) tuples, one per scale,
        finest scale first.
        """
        if sketch.shape[2:] != photo.shape[2:]:
            raise ShapeError(
                f"sketch {tuple(sketch.shape[2:])} and photo "
                f"{tuple(photo.shape[2:])} sizes differ"
            )
        x = torch.cat([sketch * 2.0 - 1.0, photo], dim=1)
        outputs = []
        for k, scale in enumerate(self.scales):
            if k > 0:
                x = F.avg_pool2d(x, kernel_size=3, stride=2, padding=1, count_include_pad=False)
            outputs.append(scale(x))
        return outputs


def build_discriminator(seed=0, input_channels=4, base_width=64):
    d = MultiScaleDiscriminator(input_channels, base_width)
    reset_parameters(d, seed)
    d.eval()
    return d


def discriminate(discriminator, sketch, photo):
    """Numpy-boundary wrapper: per-scale patch logits and feature lists."""
    s = check_sketch(sketch, divisor=1)
    p = check_photo(photo)
    if s.shape != p.shape[1:]:
        raise ShapeError(f"sketch {s.shape} and photo {p.shape[1:]} sizes differ")
    dtype = next(discriminator.parameters()).dtype
    with torch.no_grad():
        outs = discriminator(
            torch.from_numpy(s)[None, None].to(dtype),
            torch.from_numpy(p)[None].to(dtype),
        )
    return [
        {
            "patch_logits": logits[0, 0].numpy(),
            "features": [f[0].numpy() for f in feats],
        }
        for logits, feats in outs
    ]
