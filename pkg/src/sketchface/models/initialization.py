"""Deterministic parameter initialization for generators and discriminators."""

import torch
from torch import nn

INIT_STD = 0.02


def reset_parameters(module, seed):
    """Re-initialize every parameter of ``module`` from a seeded generator.

    Convolution weights draw from normal(0, 0.02), convolution biases are
    zeroed, and normalization affine parameters start at scale 1 / shift 0.
    Iteration follows registration order, so the same seed always produces
    the same parameters regardless of global RNG state.
    """
    gen = torch.Generator().manual_seed(seed)
    with torch.no_grad():
        for m in module.modules():
            if isinstance(m, (nn.Conv2d, nn.ConvTranspose2d)):
                m.weight.copy_(
                    torch.randn(m.weight.shape, generator=gen, dtype=m.weight.dtype)
                    * INIT_STD
                )
                if m.bias is not None:
                    m.bias.zero_()
            elif isinstance(m, nn.InstanceNorm2d) and m.affine:
                m.weight.fill_(1.0)
                m.bias.zero_()
    return module
