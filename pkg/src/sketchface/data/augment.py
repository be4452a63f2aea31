"""Contour augmentation: random translation and rotation, sketches only.

Photos are never transformed; the API takes only sketch rasters, which is
the contract that keeps generated images globally aligned regardless of
where the input sketch sits.
"""

from dataclasses import dataclass

import numpy as np

from ..errors import ValidationError
from ..validation import check_sketch


@dataclass(frozen=True)
class AugmentPolicy:
    """Maximum offset in pixels and maximum rotation in degrees."""

    d: float = 25.0
    theta: float = 7.0
    rng_seed: int = 0

    def __post_init__(self):
        if self.d < 0 or self.theta < 0:
            raise ValidationError(f"augment bounds must be non-negative: {self}")

    def rng(self):
        return np.random.default_rng(self.rng_seed)


def apply_contour_transform(sketch, dx, dy, angle):
    """Rotate about the image center, then translate; nearest-neighbor, white fill.

    The sketch stays binary: nearest-neighbor sampling never mixes values and
    the result is re-binarized at 0.5 for safety.
    """
    s = check_sketch(sketch, divisor=1)
    if dx == 0 and dy == 0 and angle == 0:
        return s.copy()
    h, w = s.shape
    cy, cx = (h - 1) / 2.0, (w - 1) / 2.0
    ys, xs = np.indices((h, w), dtype=np.float64)
    # invert:  p_out = R(p_in - c) + c + t   =>   p_in = R^-1(p_out - t - c) + c
    rad = np.deg2rad(angle)
    cos_a, sin_a = np.cos(rad), np.sin(rad)
    rx = xs - dx - cx
    ry = ys - dy - cy
    src_x = np.rint(cos_a * rx + sin_a * ry + cx).astype(np.int64)
    src_y = np.rint(-sin_a * rx + cos_a * ry + cy).astype(np.int64)
    inside = (src_x >= 0) & (src_x < w) & (src_y >= 0) & (src_y < h)
    out = np.ones((h, w), dtype=np.float32)
    out[inside] = s[src_y[inside], src_x[inside]]
    return np.where(out < 0.5, np.float32(0.0), np.float32(1.0))


def augment_contour(sketch, policy, rng):
    """Draw (dx, dy, angle) uniformly within the policy bounds and apply them.

    Returns (augmented sketch, {"dx", "dy", "angle"}).
    """
    dx = float(rng.uniform(-policy.d, policy.d))
    dy = float(rng.uniform(-policy.d, policy.d))
    angle = float(rng.uniform(-policy.theta, policy.theta))
    return apply_contour_transform(sketch, dx, dy, angle), {
        "dx": dx,
        "dy": dy,
        "angle": angle,
    }


def average_face(sketches):
    """Pixel-wise mean of a non-empty, uniform-size collection of sketches."""
    sketches = list(sketches)
    if not sketches:
        raise ValidationError("average_face needs at least one sketch")
    first = np.asarray(sketches[0], dtype=np.float64)
    acc = np.zeros_like(first)
    for s in sketches:
        arr = np.asarray(s, dtype=np.float64)
        if arr.shape != first.shape:
            raise ValidationError(
                f"sketch size {arr.shape} differs from {first.shape}"
            )
        acc += arr
    return (acc / len(sketches)).astype(np.float32)
