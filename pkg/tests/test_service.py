import base64
import json

import numpy as np
import pytest
from fastapi.testclient import TestClient

from conftest import locality_pair
from sketchface.data.pngio import sketch_from_png_bytes, sketch_to_png_bytes
from sketchface.errors import ConfigurationError
from sketchface.models.generator import GeneratorSpec, build_generator
from sketchface.probe.receptive import receptive_field
from sketchface.service.app import create_app
from sketchface.service.registry import ModelRegistry
from sketchface.train.checkpoint import save_checkpoint

RES = 128


@pytest.fixture(scope="module")
def registry(tmp_path_factory):
    root = tmp_path_factory.mktemp("registry")
    entries = []
    for name, prefix in (("ours", 2), ("baseline", 0)):
        g = build_generator(
            GeneratorSpec(base_channels=8, n_resblocks=1, norm_free_prefix=prefix), 13
        )
        path = save_checkpoint(root / f"{name}.pt", g, seed=13, step=0)
        entries.append(
            {"model_id": name, "display_name": name, "checkpoint": str(path), "resolution": RES}
        )
    registry_path = root / "registry.json"
    registry_path.write_text(json.dumps({"models": entries, "queue_depth": 8}))
    return registry_path


@pytest.fixture(scope="module")
def client(registry):
    return TestClient(create_app(ModelRegistry.from_file(registry)))


def _b64_sketch(sketch):
    return base64.b64encode(sketch_to_png_bytes(sketch)).decode()


def _random_sketch(seed=0, size=RES):
    rng = np.random.default_rng(seed)
    return (rng.random((size, size)) > 0.3).astype(np.float32)


def test_health_lists_models(client):
    body = client.get("/health").json()
    assert body["status"] == "ok"
    assert {m["model_id"] for m in body["models"]} == {"baseline", "ours"}


def test_templates_decode_to_service_resolution(client):
    templates = client.get("/api/templates").json()
    assert templates
    sketch = sketch_from_png_bytes(base64.b64decode(templates[0]["sketch"]))
    assert sketch.shape == (RES, RES)
    assert (sketch == 0.0).sum() > 0  # the average contour carries strokes


def test_generate_contract(client):
    resp = client.post(
        "/api/generate", json={"model_id": "ours", "sketch": _b64_sketch(_random_sketch())}
    )
    assert resp.status_code == 200
    body = resp.json()
    from PIL import Image
    import io

    img = Image.open(io.BytesIO(base64.b64decode(body["image"])))
    assert img.size == (RES, RES) and img.mode == "RGB"
    assert body["latency_ms"] > 0


def test_generate_deterministic_over_the_wire(client):
    payload = {"model_id": "ours", "sketch": _b64_sketch(_random_sketch(1))}
    a = client.post("/api/generate", json=payload).json()["image"]
    b = client.post("/api/generate", json=payload).json()["image"]
    assert a == b


def test_generate_pads_or_crops_non_matching_sizes(client):
    small = np.zeros((64, 64), dtype=np.float32)  # all strokes: center-padded
    resp = client.post(
        "/api/generate", json={"model_id": "ours", "sketch": _b64_sketch(small)}
    )
    assert resp.status_code == 200
    big = _random_sketch(8, size=256)  # center-cropped
    resp = client.post("/api/generate", json={"model_id": "ours", "sketch": _b64_sketch(big)})
    assert resp.status_code == 200


def test_unknown_model_404(client):
    resp = client.post(
        "/api/generate", json={"model_id": "nope", "sketch": _b64_sketch(_random_sketch())}
    )
    assert resp.status_code == 404
    assert "nope" in resp.json()["detail"]


def test_undecodable_payload_400(client):
    resp = client.post(
        "/api/generate",
        json={"model_id": "ours", "sketch": base64.b64encode(b"not a png").decode()},
    )
    assert resp.status_code == 400
    resp = client.post("/api/generate", json={"model_id": "ours", "sketch": "!!!"})
    assert resp.status_code == 400


def test_oversized_payload_413(client):
    huge = base64.b64encode(b"\0" * (5 * 1024 * 1024)).decode()
    resp = client.post("/api/generate", json={"model_id": "ours", "sketch": huge})
    assert resp.status_code == 413


def test_probe_matches_probe_lab_tables(client):
    resp = client.post(
        "/api/probe",
        json={
            "model_id": "ours",
            "sketch": _b64_sketch(_random_sketch(2)),
            "point": [64, 64],
            "layers": [0, 1, 2, 3, 4],
        },
    )
    assert resp.status_code == 200
    layers = resp.json()["layers"]
    for i in range(5):
        rf = receptive_field(i)
        assert layers[str(i)]["rf_size"] == rf.size
        assert layers[str(i)]["rf_stride"] == rf.stride
        assert layers[str(i)]["vector_dim"] == 8 * 2 ** i
    assert [layers[str(i)]["rf_size"] for i in range(5)] == [7, 9, 13, 21, 37]


def test_probe_auto_point(client):
    resp = client.post(
        "/api/probe",
        json={"model_id": "ours", "sketch": _b64_sketch(_random_sketch(3)), "point": "auto"},
    )
    assert resp.status_code == 200
    x, y = resp.json()["point"]
    margin = 37 // 2 + 4
    assert margin < x < RES - 1 - margin and margin < y < RES - 1 - margin


def test_probe_border_point_422(client):
    resp = client.post(
        "/api/probe",
        json={"model_id": "ours", "sketch": _b64_sketch(_random_sketch(4)), "point": [5, 64]},
    )
    assert resp.status_code == 422
    assert "border" in resp.json()["detail"]


def test_probe_locality_over_the_wire(client):
    rng = np.random.default_rng(5)
    a, b, point = locality_pair(rng, RES)
    norms = []
    for sketch in (a, b):
        resp = client.post(
            "/api/probe",
            json={
                "model_id": "ours",
                "sketch": _b64_sketch(sketch),
                "point": list(point),
                "layers": [0, 1],
            },
        )
        norms.append(resp.json()["layers"])
    for layer in ("0", "1"):
        assert abs(norms[0][layer]["vector_norm"] - norms[1][layer]["vector_norm"]) < 1e-6


def test_registry_refuses_broken_checkpoints(tmp_path):
    bad = tmp_path / "bad.pt"
    bad.write_bytes(b"garbage")
    (tmp_path / "bad.json").write_text(json.dumps({"format_version": 1, "spec": {}}))
    with pytest.raises(Exception):
        ModelRegistry([{"model_id": "x", "checkpoint": str(bad)}])
    with pytest.raises(ConfigurationError):
        ModelRegistry([])


def test_queue_overflow_returns_503(registry):
    reg = ModelRegistry.from_file(registry)
    client = TestClient(create_app(reg))
    model = reg.get("ours")
    # drain the queue slots so the next request finds it full
    for _ in range(reg.queue_depth):
        assert model.queue_slots.acquire(blocking=False)
    try:
        resp = client.post(
            "/api/generate",
            json={"model_id": "ours", "sketch": _b64_sketch(_random_sketch(9))},
        )
        assert resp.status_code == 503
    finally:
        for _ in range(reg.queue_depth):
            model.queue_slots.release()


def test_concurrent_identical_requests_identical(client):
    import concurrent.futures

    payload = {"model_id": "baseline", "sketch": _b64_sketch(_random_sketch(6))}
    with concurrent.futures.ThreadPoolExecutor(4) as pool:
        futures = [pool.submit(client.post, "/api/generate", json=payload) for _ in range(4)]
        images = {f.result().json()["image"] for f in futures}
    assert len(images) == 1
