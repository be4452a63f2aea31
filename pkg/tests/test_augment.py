import numpy as np
import pytest
from scipy import ndimage

from sketchface.data.augment import (
    AugmentPolicy,
    apply_contour_transform,
    augment_contour,
    average_face,
)
from sketchface.data.contours import render_contour
from sketchface.data.synthetic import FaceParams, face_landmarks, jitter_params
from sketchface.errors import ValidationError

SIZE = 256


@pytest.fixture(scope="module")
def sketch():
    return render_contour(face_landmarks(FaceParams(), SIZE), SIZE)


def test_zero_policy_is_bit_identical(sketch):
    policy = AugmentPolicy(d=0.0, theta=0.0, rng_seed=1)
    out, applied = augment_contour(sketch, policy, policy.rng())
    assert applied == {"dx": 0.0, "dy": 0.0, "angle": 0.0}
    assert np.array_equal(out, sketch)


def test_draw_bounds_and_uniform_means(sketch):
    policy = AugmentPolicy(d=25.0, theta=7.0, rng_seed=2)
    rng = policy.rng()
    draws = [augment_contour(sketch[:32, :32].copy(), policy, rng)[1] for _ in range(1000)]
    # keep the transform cheap: the bounds concern the draws, not the raster
    dx = np.array([a["dx"] for a in draws])
    dy = np.array([a["dy"] for a in draws])
    ang = np.array([a["angle"] for a in draws])
    assert np.all(np.abs(dx) <= 25.0) and np.all(np.abs(dy) <= 25.0)
    assert np.all(np.abs(ang) <= 7.0)
    for values, half in ((dx, 25.0), (dy, 25.0), (ang, 7.0)):
        se = half / np.sqrt(3.0) / np.sqrt(len(values))
        assert abs(values.mean()) < 3.0 * se


def test_pure_translation_matches_set_shift_oracle(sketch):
    out = apply_contour_transform(sketch, dx=5, dy=0, angle=0.0)
    ys, xs = np.nonzero(sketch == 0)
    expected = np.ones_like(sketch)
    nx = xs + 5
    keep = nx < SIZE
    expected[ys[keep], nx[keep]] = 0.0
    assert np.array_equal(out, expected)


def test_transform_keeps_raster_binary(sketch):
    out = apply_contour_transform(sketch, dx=3.7, dy=-2.2, angle=5.5)
    assert set(np.unique(out)) <= {0.0, 1.0}


def test_rotation_moves_pixels_white_fill(sketch):
    out = apply_contour_transform(sketch, dx=0, dy=0, angle=7.0)
    assert not np.array_equal(out, sketch)
    assert out[0, 0] == 1.0  # corners fill white


def test_translation_preserves_stroke_topology(sketch):
    _, n_before = ndimage.label(sketch == 0, structure=np.ones((3, 3)))
    rng = np.random.default_rng(3)
    for _ in range(10):
        dx, dy = rng.uniform(-25, 25, size=2)
        out = apply_contour_transform(sketch, dx=dx, dy=dy, angle=0.0)
        _, n_after = ndimage.label(out == 0, structure=np.ones((3, 3)))
        assert n_after == n_before


def test_policy_rejects_negative_bounds():
    with pytest.raises(ValidationError):
        AugmentPolicy(d=-1.0)
    with pytest.raises(ValidationError):
        AugmentPolicy(theta=-0.1)


class TestAverageFace:
    def test_single_sketch_is_itself(self, sketch):
        assert np.array_equal(average_face([sketch]), sketch)

    def test_sketch_plus_inverse_is_half(self, sketch):
        avg = average_face([sketch, 1.0 - sketch])
        assert np.allclose(avg, 0.5)

    def test_empty_collection_rejected(self):
        with pytest.raises(ValidationError):
            average_face([])

    def test_size_mismatch_rejected(self, sketch):
        with pytest.raises(ValidationError):
            average_face([sketch, sketch[:-16, :-16]])

    def test_dark_pixels_concentrate_on_shared_feature_lines(self):
        rng = np.random.default_rng(4)
        sketches = [
            render_contour(face_landmarks(jitter_params(rng, amount=0.5), SIZE), SIZE)
            for _ in range(100)
        ]
        avg = average_face(sketches)
        any_stroke = np.zeros((SIZE, SIZE), dtype=bool)
        for s in sketches:
            any_stroke |= s == 0
        near_stroke = ndimage.binary_dilation(any_stroke, iterations=3)
        threshold = np.quantile(avg, 0.01)
        darkest = avg <= threshold
        fraction = (darkest & near_stroke).sum() / darkest.sum()
        assert fraction > 0.99
