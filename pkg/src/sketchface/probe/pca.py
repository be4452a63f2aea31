"""PCA projection to 2D and within-group dispersion metrics."""

from dataclasses import dataclass

import numpy as np

from ..errors import ValidationError


@dataclass
class Projection2D:
    points: np.ndarray            # (n, 2)
    component_axes: np.ndarray    # (2, C), orthonormal rows
    explained_variance: np.ndarray  # (2,), descending

    def __post_init__(self):
        self.points = np.asarray(self.points, dtype=np.float64)
        self.component_axes = np.asarray(self.component_axes, dtype=np.float64)
        self.explained_variance = np.asarray(self.explained_variance, dtype=np.float64)


def pca_project(vectors, k=2):
    """Mean-centered projection onto the top-k principal axes.

    Sign convention: the largest-magnitude component of each axis is made
    positive, so repeated runs are byte-identical.  Explained variance uses
    the n-1 normalization of the sample covariance.
    """
    x = np.asarray(vectors, dtype=np.float64)
    if x.ndim != 2:
        raise ValidationError(f"vectors must be 2-D (n, C), got shape {x.shape}")
    n, c = x.shape
    if n < 2:
        raise ValidationError(f"need at least 2 vectors, got {n}")
    if c < k:
        raise ValidationError(f"dimension {c} smaller than k={k}")

    centered = x - x.mean(axis=0, keepdims=True)
    _, singular, vt = np.linalg.svd(centered, full_matrices=False)
    axes = vt[:k].copy()
    variance = singular[:k] ** 2 / (n - 1)
    if k > singular.size:  # degenerate n < k case cannot happen for k=2, n>=2
        raise ValidationError("not enough samples for the requested components")

    for i in range(k):
        pivot = int(np.argmax(np.abs(axes[i])))
        if axes[i, pivot] < 0:
            axes[i] = -axes[i]
    points = centered @ axes.T
    return Projection2D(points=points, component_axes=axes, explained_variance=variance)


def within_group_dispersion(points_by_group):
    """Mean Euclidean distance to the group centroid, per group.

    Works for any dimensionality, so the same metric serves the projected 2D
    points and the raw feature vectors.
    """
    out = {}
    for gid, pts in points_by_group.items():
        arr = np.asarray(pts, dtype=np.float64)
        if arr.ndim != 2 or arr.shape[0] < 1:
            raise ValidationError(f"group {gid}: need a non-empty (n, d) array")
        if np.all(arr == arr[0]):
            # the centroid of identical points is that point; skip the float
            # mean, whose rounding would turn an exact zero into ~1e-18 dust
            out[gid] = 0.0
            continue
        centroid = arr.mean(axis=0, keepdims=True)
        out[gid] = float(np.linalg.norm(arr - centroid, axis=1).mean())
    return out
