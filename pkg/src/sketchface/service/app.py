"""HTTP inference service: sketch-to-image generation, probe queries, templates.

Responses are pure functions of (registry, request body).  Per-model
execution is serialized through a bounded queue; an overflowing queue
answers 503 rather than stacking latency.
"""

import base64
import time

import numpy as np
from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel

from ..data.pngio import photo_to_png_bytes, sketch_from_png_bytes, sketch_to_png_bytes
from ..data.synthetic import FaceParams, average_contour_template, probe_point
from ..errors import ValidationError
from ..models.generator import generator_forward, probe_vector
from ..probe.collect import encoder_layer_features
from ..probe.receptive import check_probe_point, receptive_field

MAX_PAYLOAD_BYTES = 4 * 1024 * 1024


class GenerateRequest(BaseModel):
    model_id: str
    sketch: str  # base64 PNG, 8-bit grayscale


class ProbeRequest(BaseModel):
    model_id: str
    sketch: str
    point: object = "auto"  # [x, y] or "auto"
    layers: list = [0, 1, 2, 3, 4]


def _decode_sketch(b64, resolution):
    if len(b64) > MAX_PAYLOAD_BYTES * 4 // 3 + 8:
        raise HTTPException(status_code=413, detail="payload exceeds 4 MiB")
    try:
        raw = base64.b64decode(b64, validate=True)
    except Exception as exc:
        raise HTTPException(status_code=400, detail=f"invalid base64: {exc}") from exc
    if len(raw) > MAX_PAYLOAD_BYTES:
        raise HTTPException(status_code=413, detail="payload exceeds 4 MiB")
    try:
        sketch = sketch_from_png_bytes(raw)
    except ValidationError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc
    return _fit_to_resolution(sketch, resolution)


def _fit_to_resolution(sketch, resolution):
    """Center-pad or center-crop with white fill to the model's square size."""
    h, w = sketch.shape
    if (h, w) == (resolution, resolution):
        return sketch
    out = np.ones((resolution, resolution), dtype=np.float32)
    src_y0 = max(0, (h - resolution) // 2)
    src_x0 = max(0, (w - resolution) // 2)
    dst_y0 = max(0, (resolution - h) // 2)
    dst_x0 = max(0, (resolution - w) // 2)
    copy_h = min(h, resolution)
    copy_w = min(w, resolution)
    out[dst_y0:dst_y0 + copy_h, dst_x0:dst_x0 + copy_w] = sketch[
        src_y0:src_y0 + copy_h, src_x0:src_x0 + copy_w
    ]
    return out


def _with_model_slot(model):
    if not model.queue_slots.acquire(blocking=False):
        raise HTTPException(status_code=503, detail="inference queue full")
    return model


def create_app(registry):
    app = FastAPI(title="sketch studio service")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    app.state.registry = registry

    # starter templates: binarized average contour at each distinct resolution
    resolutions = sorted({m.resolution for m in registry.models.values()})
    templates = []
    default_points = {}
    for res in resolutions:
        template = average_contour_template(res)
        templates.append(
            {
                "template_id": f"average-face-{res}",
                "resolution": res,
                "sketch": base64.b64encode(sketch_to_png_bytes(template)).decode(),
            }
        )
        default_points[res] = probe_point(FaceParams(), res)
    app.state.templates = templates
    app.state.default_points = default_points

    def get_model(model_id):
        model = registry.get(model_id)
        if model is None:
            raise HTTPException(status_code=404, detail=f"unknown model {model_id!r}")
        return model

    @app.get("/health")
    def health():
        return {
            "status": "ok",
            "models": [
                {
                    "model_id": m.model_id,
                    "display_name": m.display_name,
                    "resolution": m.resolution,
                }
                for m in registry.models.values()
            ],
        }

    @app.get("/api/templates")
    def list_templates():
        return app.state.templates

    @app.post("/api/generate")
    def generate(req: GenerateRequest):
        model = get_model(req.model_id)
        sketch = _decode_sketch(req.sketch, model.resolution)
        _with_model_slot(model)
        try:
            start = time.perf_counter()
            with model.lock:
                photo = generator_forward(model.generator, sketch)
            latency = (time.perf_counter() - start) * 1000.0
        finally:
            model.queue_slots.release()
        return {
            "image": base64.b64encode(photo_to_png_bytes(photo)).decode(),
            "latency_ms": latency,
        }

    @app.post("/api/probe")
    def probe(req: ProbeRequest):
        model = get_model(req.model_id)
        sketch = _decode_sketch(req.sketch, model.resolution)
        spec = model.generator.spec
        layers = sorted({int(v) for v in req.layers})
        if not layers:
            raise HTTPException(status_code=422, detail="no layers requested")
        if any(not 0 <= v <= spec.n_downsample for v in layers):
            raise HTTPException(
                status_code=422,
                detail=f"layers must lie in 0..{spec.n_downsample}",
            )
        if req.point == "auto":
            point = app.state.default_points[model.resolution]
        else:
            try:
                point = (int(req.point[0]), int(req.point[1]))
            except (TypeError, ValueError, IndexError) as exc:
                raise HTTPException(status_code=422, detail=f"bad point: {exc}") from exc
        try:
            point = check_probe_point(point, model.resolution)
        except ValidationError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc

        _with_model_slot(model)
        try:
            encoder = model.probe_encoder()
            results = {}
            with model.lock:
                for layer in layers:
                    fm = encoder_layer_features(encoder, sketch, layer, spec)
                    vec = probe_vector(fm, point)
                    rf = receptive_field(layer)
                    results[str(layer)] = {
                        "rf_size": rf.size,
                        "rf_stride": rf.stride,
                        "vector_dim": int(vec.shape[0]),
                        "vector_norm": float(np.linalg.norm(vec)),
                    }
        finally:
            model.queue_slots.release()
        return {"model_id": model.model_id, "point": list(point), "layers": results}

    return app
