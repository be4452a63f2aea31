"""Input validation helpers for the public API surface.

Sketches are single-channel float arrays in [0, 1] (1 = white background,
0 = black stroke).  Photos are 3-channel float arrays in [-1, 1].  Both are
square with side divisible by the generator's total downsampling factor.
"""

import numpy as np

from .errors import ShapeError, ValidationError


def check_finite(arr, name="array"):
    arr = np.asarray(arr)
    if not np.all(np.isfinite(arr)):
        bad = int(np.size(arr) - np.count_nonzero(np.isfinite(arr)))
        raise ValidationError(f"{name} contains {bad} non-finite values")
    return arr


def check_sketch(arr, divisor=16, name="sketch"):
    """Validate a single sketch raster (H, W) and return it as float32."""
    arr = np.asarray(arr, dtype=np.float32)
    if arr.ndim != 2:
        raise ShapeError(f"{name} must be 2-D (H, W), got shape {arr.shape}")
    h, w = arr.shape
    if h != w:
        raise ShapeError(f"{name} must be square, got {h}x{w}")
    if h % divisor != 0:
        raise ShapeError(f"{name} side {h} not divisible by {divisor}")
    check_finite(arr, name)
    if arr.min() < 0.0 or arr.max() > 1.0:
        raise ValidationError(
            f"{name} values must lie in [0, 1], got range "
            f"[{arr.min():.4g}, {arr.max():.4g}]"
        )
    return arr


def check_photo(arr, name="photo"):
    """Validate a single photo (3, H, W) and return it as float32."""
    arr = np.asarray(arr, dtype=np.float32)
    if arr.ndim != 3 or arr.shape[0] != 3:
        raise ShapeError(f"{name} must be (3, H, W), got shape {arr.shape}")
    check_finite(arr, name)
    if arr.min() < -1.0 or arr.max() > 1.0:
        raise ValidationError(
            f"{name} values must lie in [-1, 1], got range "
            f"[{arr.min():.4g}, {arr.max():.4g}]"
        )
    return arr


def check_sketch_batch(arr, divisor=16, name="sketches"):
    """Validate a batch of sketches (N, H, W); a single (H, W) is promoted."""
    arr = np.asarray(arr, dtype=np.float32)
    if arr.ndim == 2:
        arr = arr[None]
    if arr.ndim != 3:
        raise ShapeError(f"{name} must be (N, H, W), got shape {arr.shape}")
    for i in range(arr.shape[0]):
        check_sketch(arr[i], divisor=divisor, name=f"{name}[{i}]")
    return arr


def check_photo_batch(arr, name="photos"):
    arr = np.asarray(arr, dtype=np.float32)
    if arr.ndim == 3:
        arr = arr[None]
    if arr.ndim != 4 or arr.shape[1] != 3:
        raise ShapeError(f"{name} must be (N, 3, H, W), got shape {arr.shape}")
    for i in range(arr.shape[0]):
        check_photo(arr[i], name=f"{name}[{i}]")
    return arr


def check_point_in_bounds(point, height, width, name="point"):
    x, y = point
    if not (0 <= x < width and 0 <= y < height):
        raise ValidationError(
            f"{name} ({x}, {y}) outside image bounds {width}x{height}"
        )
    return float(x), float(y)


def check_landmarks(points, name="landmarks"):
    """Validate a 68-point landmark array (68, 2)."""
    pts = np.asarray(points, dtype=np.float64)
    if pts.shape != (68, 2):
        raise ValidationError(
            f"{name} must have exactly 68 (x, y) points, got shape {pts.shape}"
        )
    check_finite(pts, name)
    return pts
