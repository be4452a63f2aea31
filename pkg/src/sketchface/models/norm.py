"""Per-channel instance normalization as a standalone operation.

Normalizes each channel of a single sample over its spatial positions:
(x - mean) / sqrt(var + eps), optionally followed by a learned per-channel
scale and shift.  A constant channel maps to all zeros (the eps in the
denominator guards the zero-variance case).
"""

import numpy as np

from ..errors import ShapeError, ValidationError

EPS = 1e-5


def instance_normalize(x, eps=EPS, scale=None, shift=None):
    """Standardize one sample's feature values channel by channel.

    Args:
        x: array of shape (C, H, W) for a single sample.
        eps: small positive constant added to the variance.
        scale, shift: optional per-channel affine parameters, shape (C,).

    Returns:
        Array of the same shape and dtype as ``x``.
    """
    x = np.asarray(x)
    if x.ndim != 3:
        raise ShapeError(f"expected (C, H, W) values for one sample, got {x.shape}")
    if not eps > 0:
        raise ValidationError(f"eps must be positive, got {eps}")
    if not np.all(np.isfinite(x)):
        raise ValidationError("non-finite values in normalization input")

    mean = x.mean(axis=(1, 2), keepdims=True)
    var = x.var(axis=(1, 2), keepdims=True)
    out = (x - mean) / np.sqrt(var + eps)
    # a constant channel standardizes to exact zeros, not rounding dust
    constant = x.max(axis=(1, 2), keepdims=True) == x.min(axis=(1, 2), keepdims=True)
    out = np.where(constant, 0.0, out)
    if scale is not None:
        out = out * np.asarray(scale).reshape(-1, 1, 1)
    if shift is not None:
        out = out + np.asarray(shift).reshape(-1, 1, 1)
    return out.astype(x.dtype, copy=False)
