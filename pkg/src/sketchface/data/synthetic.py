"""Synthetic faces: a parameterized 68-landmark template plus paired photos.

Used for desk-scale training runs and as the substrate for the probe-group
generator.  All coordinates are fractions of the raster side, so the same
parameters render consistently at any resolution.
"""

import math
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .augment import average_face
from .contours import render_contour, segment_pixels
from .landmarks import save_landmarks
from .manifest import build_manifest
from .pngio import save_photo_png, save_sketch_png


@dataclass(frozen=True)
class FaceParams:
    """Face geometry in units of the raster side."""

    center_x: float = 0.50
    center_y: float = 0.42          # eye-line height
    jaw_width: float = 0.30         # half-width of the face oval
    jaw_depth: float = 0.34         # eye line to chin
    brow_height: float = 0.105      # eye line to brow
    brow_arch: float = 0.02
    brow_width: float = 0.065       # half-width of one brow
    eye_offset: float = 0.16        # face center to eye center
    eye_width: float = 0.045        # half-width of one eye
    eye_openness: float = 0.022     # half-height of one eye
    eye_scale: float = 1.0
    nose_length: float = 0.13       # eye line to nose base
    nose_width: float = 0.055       # half-width of the nose base
    mouth_down: float = 0.22        # eye line to mouth center
    mouth_width: float = 0.085      # half-width of the outer lips
    mouth_height: float = 0.035     # half-height of the outer lips

    def with_eyes(self, eye_width, eye_openness, eye_scale=1.0):
        return replace(
            self, eye_width=eye_width, eye_openness=eye_openness, eye_scale=eye_scale
        )


def _eye_hexagon(ex, ey, w, h):
    return [
        (ex - w, ey),
        (ex - w / 3, ey - h),
        (ex + w / 3, ey - h),
        (ex + w, ey),
        (ex + w / 3, ey + h),
        (ex - w / 3, ey + h),
    ]


def face_landmarks(params, size):
    """Render the 68-point template at pixel scale ``size``."""
    p = params
    s = float(size)
    cx, cy = p.center_x * s, p.center_y * s
    pts = []

    # jaw 0-16: lower half-ellipse from left temple over the chin
    for i in range(17):
        t = math.pi * i / 16.0
        pts.append((cx - p.jaw_width * s * math.cos(t), cy + p.jaw_depth * s * math.sin(t)))

    # brows 17-21 / 22-26
    for side in (-1, 1):
        bx = cx + side * p.eye_offset * s
        by = cy - p.brow_height * s
        for k in range(5):
            t = (k - 2) / 2.0
            pts.append((bx + t * p.brow_width * s, by - p.brow_arch * s * (1 - t * t)))

    # nose bridge 27-30, base 31-35
    bridge_top = cy + 0.015 * s
    bridge_bottom = cy + (p.nose_length - 0.03) * s
    for k in range(4):
        pts.append((cx, bridge_top + (bridge_bottom - bridge_top) * k / 3.0))
    base_y = cy + p.nose_length * s
    for k in range(5):
        t = (k - 2) / 2.0
        pts.append((cx + t * p.nose_width * s, base_y - 0.008 * s * abs(t)))

    # eyes 36-41 / 42-47
    w = p.eye_width * p.eye_scale * s
    h = p.eye_openness * p.eye_scale * s
    pts.extend(_eye_hexagon(cx - p.eye_offset * s, cy, w, h))
    pts.extend(_eye_hexagon(cx + p.eye_offset * s, cy, w, h))

    # outer lips 48-59, inner lips 60-67
    my = cy + p.mouth_down * s
    mw, mh = p.mouth_width * s, p.mouth_height * s
    for t in np.linspace(math.pi, 0.0, 7):
        pts.append((cx + mw * math.cos(t), my - mh * math.sin(t)))
    for t in np.linspace(0.0, math.pi, 7)[1:-1]:
        pts.append((cx + mw * math.cos(t), my + mh * math.sin(t)))
    for t in np.linspace(math.pi, 0.0, 5):
        pts.append((cx + 0.6 * mw * math.cos(t), my - 0.6 * mh * math.sin(t)))
    for t in np.linspace(0.0, math.pi, 5)[1:-1]:
        pts.append((cx + 0.6 * mw * math.cos(t), my + 0.6 * mh * math.sin(t)))

    return np.array(pts, dtype=np.float64)


def probe_point(params, size):
    """Outer left-eye-corner pixel (landmark 36) of the template."""
    lm = face_landmarks(params, size)
    return int(round(lm[36, 0])), int(round(lm[36, 1]))


def jitter_params(rng, base=None, amount=1.0):
    """Small random perturbation of a base parameter set."""
    base = base or FaceParams()
    u = lambda lo, hi: float(rng.uniform(lo, hi)) * amount

    return replace(
        base,
        center_x=base.center_x + u(-0.01, 0.01),
        center_y=base.center_y + u(-0.01, 0.01),
        jaw_width=base.jaw_width + u(-0.02, 0.02),
        jaw_depth=base.jaw_depth + u(-0.02, 0.02),
        brow_height=base.brow_height + u(-0.008, 0.008),
        eye_width=base.eye_width + u(-0.004, 0.004),
        eye_openness=base.eye_openness + u(-0.003, 0.003),
        nose_length=base.nose_length + u(-0.015, 0.015),
        nose_width=base.nose_width + u(-0.008, 0.008),
        mouth_width=base.mouth_width + u(-0.012, 0.012),
        mouth_height=base.mouth_height + u(-0.006, 0.006),
    )


def synthetic_photo(params, size, rng):
    """Cheap deterministic face photo matching the template, values in [-1, 1]."""
    s = float(size)
    ys, xs = np.indices((size, size), dtype=np.float64)
    cx, cy = params.center_x * s, params.center_y * s
    a, b = params.jaw_width * s, params.jaw_depth * s

    bg = np.array([0.05, 0.1, 0.2]) + rng.uniform(-0.05, 0.05, size=3)
    skin = np.array([0.55, 0.35, 0.25]) + rng.uniform(-0.1, 0.1, size=3)
    photo = np.empty((3, size, size), dtype=np.float64)
    # face oval: full ellipse around the eye line, matching the jaw half below
    inside = ((xs - cx) / a) ** 2 + ((ys - cy) / b) ** 2 <= 1.0
    shade = 1.0 - 0.25 * ((ys - cy) / b)
    for c in range(3):
        photo[c] = np.where(inside, skin[c] * shade, bg[c])

    # darken feature lines
    lm = face_landmarks(params, size)
    from .contours import contour_segments

    mask = np.zeros((size, size), dtype=bool)
    for seg_a, seg_b in contour_segments(lm):
        for x, y in segment_pixels(seg_a, seg_b):
            if 0 <= x < size and 0 <= y < size:
                mask[y, x] = True
    photo[:, mask] *= 0.35

    # 3x3 box blur to soften edges
    padded = np.pad(photo, ((0, 0), (1, 1), (1, 1)), mode="edge")
    blurred = np.zeros_like(photo)
    for dy in range(3):
        for dx in range(3):
            blurred += padded[:, dy:dy + size, dx:dx + size]
    photo = blurred / 9.0
    return np.clip(photo * 2.0 - 1.0, -1.0, 1.0).astype(np.float32)


def make_synthetic_dataset(root, n_pairs, size=128, seed=0, split_ratio=0.75):
    """Write a paired synthetic dataset and return its manifest."""
    root = Path(root)
    photo_dir, lm_dir, sketch_dir = root / "photos", root / "landmarks", root / "sketches"
    for d in (photo_dir, lm_dir, sketch_dir):
        d.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(seed)
    for i in range(n_pairs):
        params = jitter_params(rng)
        lm = face_landmarks(params, size)
        stem = f"face_{i:04d}"
        save_landmarks(lm_dir / f"{stem}.json", lm)
        save_sketch_png(sketch_dir / f"{stem}.png", render_contour(lm, size))
        save_photo_png(photo_dir / f"{stem}.png", synthetic_photo(params, size, rng))
    manifest = build_manifest(photo_dir, lm_dir, sketch_dir, split_ratio=split_ratio, seed=seed)
    manifest.save(root / "manifest.json")
    return manifest


def average_contour_template(size, n_faces=24, seed=7, threshold=0.6):
    """Binarized average of jittered synthetic contours (starter template)."""
    rng = np.random.default_rng(seed)
    sketches = [
        render_contour(face_landmarks(jitter_params(rng, amount=0.5), size), size)
        for _ in range(n_faces)
    ]
    avg = average_face(sketches)
    return np.where(avg < threshold, np.float32(0.0), np.float32(1.0))
