"""Landmark-contour rendering: 68 points to a binary two-pixel-wide sketch.

Strokes are rasterized with a parallel-pen rule: the integer Bresenham line
through the rounded endpoints plus the same line shifted one pixel along the
segment's minor axis.  This keeps the raster binary (no anti-aliasing) and
makes the stroke exactly two pixels thick measured across the minor axis at
any midpoint, which the renderer tests rely on.
"""

import numpy as np

from ..errors import ValidationError
from ..validation import check_landmarks

# iBUG 68-point grouping: (index range, closed?)
FACE_SEGMENTS = [
    (list(range(0, 17)), False),    # jaw
    (list(range(17, 22)), False),   # left brow
    (list(range(22, 27)), False),   # right brow
    (list(range(27, 31)), False),   # nose bridge
    (list(range(31, 36)), False),   # nose base
    (list(range(36, 42)), True),    # left eye
    (list(range(42, 48)), True),    # right eye
    (list(range(48, 60)), True),    # outer lips
    (list(range(60, 68)), True),    # inner lips
]


def _bresenham(x0, y0, x1, y1):
    """Integer line pixels from (x0, y0) to (x1, y1), endpoints included."""
    pixels = []
    dx = abs(x1 - x0)
    dy = -abs(y1 - y0)
    sx = 1 if x0 < x1 else -1
    sy = 1 if y0 < y1 else -1
    err = dx + dy
    x, y = x0, y0
    while True:
        pixels.append((x, y))
        if x == x1 and y == y1:
            break
        e2 = 2 * err
        if e2 >= dy:
            err += dy
            x += sx
        if e2 <= dx:
            err += dx
            y += sy
    return pixels


def segment_pen_offset(a, b):
    """Minor-axis unit offset of the parallel pen for segment a -> b."""
    if abs(b[0] - a[0]) >= abs(b[1] - a[1]):
        return (0, 1)   # shallow: second line one pixel down
    return (1, 0)       # steep: second line one pixel right


def segment_pixels(a, b):
    """All stroke pixels of one two-pixel-wide segment (may include out-of-frame)."""
    x0, y0 = int(round(a[0])), int(round(a[1]))
    x1, y1 = int(round(b[0])), int(round(b[1]))
    ox, oy = segment_pen_offset(a, b)
    pixels = set(_bresenham(x0, y0, x1, y1))
    pixels.update(_bresenham(x0 + ox, y0 + oy, x1 + ox, y1 + oy))
    return pixels


def draw_polyline(canvas, points, closed=False):
    """Stamp a two-pixel polyline onto ``canvas`` (in place; 0 = stroke)."""
    pts = np.asarray(points, dtype=np.float64)
    h, w = canvas.shape
    n = len(pts)
    pairs = [(pts[i], pts[i + 1]) for i in range(n - 1)]
    if closed and n > 2:
        pairs.append((pts[-1], pts[0]))
    for a, b in pairs:
        for x, y in segment_pixels(a, b):
            if 0 <= x < w and 0 <= y < h:
                canvas[y, x] = 0.0
    return canvas


def contour_segments(points):
    """(a, b) endpoint pairs of every stroke segment of the 68-point scheme."""
    pairs = []
    for indices, closed in FACE_SEGMENTS:
        for i, j in zip(indices[:-1], indices[1:]):
            pairs.append((points[i], points[j]))
        if closed:
            pairs.append((points[indices[-1]], points[indices[0]]))
    return pairs


def render_contour(landmarks, size, frame_size=None):
    """Render 68 landmarks as a binary white-background sketch raster.

    ``frame_size`` is the side of the coordinate frame the landmarks live in;
    points are scaled by size/frame_size (default: already in target frame).
    Landmarks are connected in sequence within each standard facial segment;
    eyes and lips close, jaw, brows, and nose stay open.
    """
    pts = check_landmarks(landmarks)
    if size < 64:
        raise ValidationError(f"render size must be >= 64, got {size}")
    if frame_size is not None and frame_size != size:
        pts = pts * (size / float(frame_size))
    if pts.min() < 0 or pts.max() > size - 1:
        raise ValidationError(
            f"landmarks out of bounds after scaling to {size}: "
            f"range [{pts.min():.1f}, {pts.max():.1f}]"
        )
    canvas = np.ones((size, size), dtype=np.float32)
    for indices, closed in FACE_SEGMENTS:
        draw_polyline(canvas, pts[indices], closed=closed)
    return canvas
