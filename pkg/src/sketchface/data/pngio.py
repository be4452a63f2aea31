"""PNG encode/decode for sketches (8-bit grayscale) and photos (8-bit RGB)."""

import io

import numpy as np
from PIL import Image

from ..errors import ValidationError


def save_sketch_png(path, sketch):
    """Write a [0,1] sketch raster as 8-bit grayscale PNG."""
    arr = (np.clip(np.asarray(sketch), 0.0, 1.0) * 255.0).round().astype(np.uint8)
    Image.fromarray(arr, mode="L").save(path, format="PNG")


def load_sketch_png(path):
    """Read an 8-bit grayscale PNG into a [0,1] float32 raster."""
    with Image.open(path) as im:
        arr = np.asarray(im.convert("L"), dtype=np.float32)
    return arr / 255.0


def save_photo_png(path, photo):
    """Write a [-1,1] photo (3, H, W) as 8-bit RGB PNG."""
    arr = np.asarray(photo)
    if arr.ndim != 3 or arr.shape[0] != 3:
        raise ValidationError(f"photo must be (3, H, W), got {arr.shape}")
    u8 = ((np.clip(arr, -1.0, 1.0) + 1.0) * 127.5).round().astype(np.uint8)
    Image.fromarray(u8.transpose(1, 2, 0), mode="RGB").save(path, format="PNG")


def load_photo_png(path):
    """Read an 8-bit RGB PNG into a [-1,1] float32 photo (3, H, W)."""
    with Image.open(path) as im:
        arr = np.asarray(im.convert("RGB"), dtype=np.float32)
    return arr.transpose(2, 0, 1) / 127.5 - 1.0


def sketch_to_png_bytes(sketch):
    buf = io.BytesIO()
    arr = (np.clip(np.asarray(sketch), 0.0, 1.0) * 255.0).round().astype(np.uint8)
    Image.fromarray(arr, mode="L").save(buf, format="PNG")
    return buf.getvalue()


def photo_to_png_bytes(photo):
    buf = io.BytesIO()
    arr = np.asarray(photo)
    u8 = ((np.clip(arr, -1.0, 1.0) + 1.0) * 127.5).round().astype(np.uint8)
    Image.fromarray(u8.transpose(1, 2, 0), mode="RGB").save(buf, format="PNG")
    return buf.getvalue()


def sketch_from_png_bytes(data):
    try:
        with Image.open(io.BytesIO(data)) as im:
            arr = np.asarray(im.convert("L"), dtype=np.float32)
    except Exception as exc:
        raise ValidationError(f"undecodable image payload: {exc}") from exc
    return arr / 255.0
