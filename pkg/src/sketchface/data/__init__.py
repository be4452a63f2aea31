from .augment import AugmentPolicy, apply_contour_transform, augment_contour, average_face
from .contours import FACE_SEGMENTS, contour_segments, draw_polyline, render_contour
from .landmarks import LandmarkSet, landmarks_from_text, load_landmarks, save_landmarks
from .manifest import DatasetManifest, ManifestEntry, build_manifest
from .pngio import (
    load_photo_png,
    load_sketch_png,
    photo_to_png_bytes,
    save_photo_png,
    save_sketch_png,
    sketch_from_png_bytes,
    sketch_to_png_bytes,
)
from .synthetic import (
    FaceParams,
    average_contour_template,
    face_landmarks,
    jitter_params,
    make_synthetic_dataset,
    probe_point,
    synthetic_photo,
)

__all__ = [
    "AugmentPolicy",
    "DatasetManifest",
    "FACE_SEGMENTS",
    "FaceParams",
    "LandmarkSet",
    "ManifestEntry",
    "apply_contour_transform",
    "augment_contour",
    "average_contour_template",
    "average_face",
    "build_manifest",
    "contour_segments",
    "draw_polyline",
    "face_landmarks",
    "jitter_params",
    "landmarks_from_text",
    "load_landmarks",
    "load_photo_png",
    "load_sketch_png",
    "make_synthetic_dataset",
    "photo_to_png_bytes",
    "probe_point",
    "render_contour",
    "save_landmarks",
    "save_photo_png",
    "save_sketch_png",
    "sketch_from_png_bytes",
    "sketch_to_png_bytes",
    "synthetic_photo",
]
