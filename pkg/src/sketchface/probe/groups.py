"""Synthetic probe groups: 11 controlled families of sketches.

Each group varies one designated facial region while the rest of the sketch
stays fixed: G1 adds hair, G2 adds attributes (whiskers, wrinkles, ears),
G3 varies the jaw, G4 the brows, G5 eye shape, G6 eye size, G7 is
uncorrelated scribbles, G8 mouth, G9 nose, G10 mouth with G9's eyes, G11
nose with G8's eyes.  In every group except G5-G7 the pixels of the eye
window (deepest receptive field around the probe point) are bit-identical
across the group's sketches, so any movement of a probe vector there must
come from outside its receptive field.
"""

from dataclasses import dataclass, replace

import numpy as np

from ..data.contours import draw_polyline, render_contour
from ..data.synthetic import FaceParams, face_landmarks
from ..errors import ValidationError
from .receptive import check_probe_point, receptive_field

EYE_INVARIANT_GROUPS = (1, 2, 3, 4, 8, 9, 10, 11)

GROUP_DESCRIPTIONS = {
    1: "hair added",
    2: "attributes added (whiskers, wrinkles, ears)",
    3: "face shape change",
    4: "eyebrow change",
    5: "eye shape change",
    6: "eye size change",
    7: "uncorrelated scribbles",
    8: "mouth shape change",
    9: "nose shape change",
    10: "mouth shape change, eyes shared with G9",
    11: "nose shape change, eyes shared with G8",
}

# per-group eye geometry: distinct across groups except the mandated pairs;
# every pair differs by >= 1.2 px in width or height at the minimum raster
# size, so rounding to the pixel grid cannot collapse two groups' eyes
_GROUP_EYES = {
    1: (0.045, 0.022),
    2: (0.050, 0.027),
    3: (0.040, 0.017),
    4: (0.045, 0.029),
    8: (0.050, 0.019),
    9: (0.040, 0.025),
    10: (0.040, 0.025),  # same eyes as G9
    11: (0.050, 0.019),  # same eyes as G8
}


@dataclass
class ProbeGroup:
    group_id: int
    description: str
    sketches: list
    eye_invariant: bool
    probe_point: tuple  # (x, y) pixel, shared by all groups of one suite

    def __post_init__(self):
        if len(self.sketches) < 2:
            raise ValidationError(
                f"group {self.group_id} needs at least 2 sketches"
            )
        shapes = {s.shape for s in self.sketches}
        if len(shapes) != 1:
            raise ValidationError(f"group {self.group_id} mixes resolutions: {shapes}")


def eye_window(sketch, point, margin=None):
    """The square of pixels around ``point`` covered by the deepest receptive field."""
    half = (receptive_field(4).size // 2) if margin is None else margin
    x, y = int(point[0]), int(point[1])
    return sketch[y - half: y + half + 1, x - half: x + half + 1]


def _spread(rng, lo, hi, n):
    """n distinct values covering [lo, hi] with a little jitter, deterministic."""
    base = np.linspace(lo, hi, n)
    jitter = rng.uniform(-0.15, 0.15, size=n) * (hi - lo) / max(n - 1, 1)
    return base + jitter


def _hair_strokes(rng, size, n_arcs):
    """Polylines above the brow line."""
    strokes = []
    for _ in range(n_arcs):
        x0 = rng.uniform(0.25, 0.45) * size
        x1 = rng.uniform(0.55, 0.75) * size
        top = rng.uniform(0.10, 0.24) * size
        n = 8
        xs = np.linspace(x0, x1, n)
        bow = rng.uniform(0.02, 0.05) * size
        t = np.linspace(-1.0, 1.0, n)
        ys = top + bow * t * t
        strokes.append(np.stack([xs, ys], axis=1))
    return strokes


def _attribute_strokes(rng, size, kind):
    s = float(size)
    if kind == 0:  # whiskers on both cheeks
        out = []
        for side in (-1, 1):
            for k in range(3):
                y = (0.60 + 0.035 * k + rng.uniform(-0.01, 0.01)) * s
                x0 = (0.5 + side * 0.17) * s
                x1 = (0.5 + side * (0.24 + rng.uniform(0.0, 0.03))) * s
                out.append(np.array([[x0, y], [x1, y + rng.uniform(-2, 2)]]))
        return out
    if kind == 1:  # forehead wrinkles
        out = []
        for k in range(2):
            y = (0.205 + 0.03 * k + rng.uniform(-0.008, 0.008)) * s
            xs = np.linspace(0.40 * s, 0.60 * s, 6)
            ys = y + np.sin(np.linspace(0, np.pi, 6)) * rng.uniform(0.5, 2.5)
            out.append(np.stack([xs, ys], axis=1))
        return out
    out = []  # ears
    for side in (-1, 1):
        x = (0.5 + side * (0.315 + rng.uniform(0.0, 0.015))) * s
        ys = np.linspace(0.40 * s, 0.47 * s, 5)
        xs = x + side * np.sin(np.linspace(0, np.pi, 5)) * rng.uniform(2.0, 4.0)
        out.append(np.stack([xs, ys], axis=1))
    return out


def _scribbles(rng, size):
    out = []
    for _ in range(rng.integers(2, 5)):
        n = int(rng.integers(3, 7))
        pts = rng.uniform(0.05, 0.95, size=(n, 2)) * size
        out.append(pts)
    return out


def generate_synthetic_probe_groups(seed=0, n_per_group=18, size=512):
    """Build the 11-group probe suite at the given resolution.

    All groups share one canonical probe point: the outer left-eye-corner
    landmark of the base template.  Groups that keep the eye region fixed are
    flagged eye_invariant.
    """
    if n_per_group < 2:
        raise ValidationError(f"n_per_group must be >= 2, got {n_per_group}")
    if size < 256 or size % 16 != 0:
        raise ValidationError(
            f"probe suite needs size >= 256 and divisible by 16, got {size}; "
            "smaller rasters cannot keep varying strokes clear of the eye window"
        )
    rng = np.random.default_rng(seed)
    base = FaceParams()
    point = check_probe_point(
        tuple(np.round(face_landmarks(base, size)[36]).astype(int)), size
    )

    def render_with(params, extra_strokes=()):
        sketch = render_contour(face_landmarks(params, size), size)
        for pts in extra_strokes:
            draw_polyline(sketch, pts)
        return sketch

    groups = []
    for gid in range(1, 12):
        g_rng = np.random.default_rng(seed * 1000 + gid)
        eyes = _GROUP_EYES.get(gid)
        params = base.with_eyes(*eyes) if eyes else base
        sketches = []
        if gid == 1:
            for k in range(n_per_group):
                sketches.append(render_with(params, _hair_strokes(g_rng, size, 2 + k % 3)))
        elif gid == 2:
            for k in range(n_per_group):
                sketches.append(render_with(params, _attribute_strokes(g_rng, size, k % 3)))
        elif gid == 3:
            # the jaw curves toward the window bottom (x = cx - w*cos(t)), so
            # width >= 0.30 keeps its strokes clear of the eye window at 256
            widths = _spread(g_rng, 0.30, 0.35, n_per_group)
            depths = _spread(g_rng, 0.31, 0.37, n_per_group)
            for w, d in zip(widths, depths):
                sketches.append(render_with(replace(params, jaw_width=w, jaw_depth=d)))
        elif gid == 4:
            heights = _spread(g_rng, 0.095, 0.120, n_per_group)
            arches = _spread(g_rng, 0.012, 0.030, n_per_group)
            for h, a in zip(heights, arches):
                sketches.append(render_with(replace(params, brow_height=h, brow_arch=a)))
        elif gid == 5:
            opens = _spread(g_rng, 0.014, 0.032, n_per_group)
            for h in opens:
                sketches.append(render_with(replace(params, eye_openness=h)))
        elif gid == 6:
            scales = _spread(g_rng, 0.75, 1.30, n_per_group)
            for sc in scales:
                sketches.append(render_with(replace(params, eye_scale=sc)))
        elif gid == 7:
            for _ in range(n_per_group):
                sketches.append(render_with(params, _scribbles(g_rng, size)))
        elif gid in (8, 10):
            widths = _spread(g_rng, 0.060, 0.110, n_per_group)
            heights = _spread(g_rng, 0.024, 0.050, n_per_group)
            for w, h in zip(widths, heights):
                sketches.append(
                    render_with(replace(params, mouth_width=w, mouth_height=h))
                )
        else:  # 9, 11: nose variation
            lengths = _spread(g_rng, 0.105, 0.160, n_per_group)
            widths = _spread(g_rng, 0.042, 0.068, n_per_group)
            for ln, w in zip(lengths, widths):
                sketches.append(
                    render_with(replace(params, nose_length=ln, nose_width=w))
                )
        groups.append(
            ProbeGroup(
                group_id=gid,
                description=GROUP_DESCRIPTIONS[gid],
                sketches=sketches,
                eye_invariant=gid in EYE_INVARIANT_GROUPS,
                probe_point=point,
            )
        )
    return groups
