"""68-point landmark I/O.

Native format: JSON array of 68 [x, y] pairs.  A converter accepts
whitespace-separated text with 136 numbers (x y per line or flat).
"""

import json
from dataclasses import dataclass

import numpy as np

from ..errors import ValidationError
from ..validation import check_landmarks


@dataclass
class LandmarkSet:
    points: np.ndarray  # (68, 2) float, pixel coordinates
    source_image_id: str = ""

    def __post_init__(self):
        self.points = check_landmarks(self.points)


def landmarks_from_text(text):
    """Parse 136 whitespace-separated numbers into a (68, 2) array."""
    values = text.split()
    if len(values) != 136:
        raise ValidationError(f"expected 136 numbers, got {len(values)}")
    try:
        flat = np.array([float(v) for v in values], dtype=np.float64)
    except ValueError as exc:
        raise ValidationError(f"non-numeric landmark value: {exc}") from exc
    return flat.reshape(68, 2)


def load_landmarks(path):
    """Load landmarks from a JSON or whitespace-text file."""
    raw = open(path, "r", encoding="utf-8").read()
    stripped = raw.lstrip()
    if stripped.startswith("["):
        try:
            data = json.loads(raw)
            points = np.asarray(data, dtype=np.float64)
        except (json.JSONDecodeError, ValueError) as exc:
            raise ValidationError(f"{path}: invalid JSON landmarks: {exc}") from exc
        return check_landmarks(points)
    return check_landmarks(landmarks_from_text(raw))


def save_landmarks(path, points):
    pts = check_landmarks(points)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump([[float(x), float(y)] for x, y in pts], fh)
