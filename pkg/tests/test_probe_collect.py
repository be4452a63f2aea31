import numpy as np
import pytest

from sketchface.errors import ValidationError
from sketchface.models.generator import GeneratorSpec, build_generator
from sketchface.probe.collect import collect_probe_vectors
from sketchface.probe.groups import ProbeGroup, generate_synthetic_probe_groups
from sketchface.probe.pca import within_group_dispersion

SIZE = 256


@pytest.fixture(scope="module")
def suite():
    return generate_synthetic_probe_groups(seed=3, n_per_group=3, size=SIZE)


@pytest.fixture(scope="module")
def modified():
    return build_generator(GeneratorSpec(base_channels=8, n_resblocks=1, norm_free_prefix=2), 0)


@pytest.fixture(scope="module")
def baseline():
    return build_generator(GeneratorSpec(base_channels=8, n_resblocks=1, norm_free_prefix=0), 0)


def test_vector_counts_and_dims(modified, suite):
    sets = collect_probe_vectors(modified, suite, layers=[0, 1])
    assert sorted(sets) == [0, 1]
    for layer, vs in sets.items():
        assert vs.vectors.shape == (33, 8 * 2 ** layer)
        assert len(vs.labels) == 33
    assert sets[0].point == suite[0].probe_point


def test_identical_sketches_give_identical_vectors(modified, suite):
    sketch = suite[0].sketches[0]
    group = ProbeGroup(1, "twins", [sketch.copy(), sketch.copy()], True, suite[0].probe_point)
    sets = collect_probe_vectors(modified, [group], layers=[0, 1, 2])
    for vs in sets.values():
        assert np.array_equal(vs.vectors[0], vs.vectors[1])


def test_eye_invariant_groups_collapse_at_l0_l1_without_normalization(modified, suite):
    sets = collect_probe_vectors(modified, suite, layers=[0, 1])
    for layer in (0, 1):
        vs = sets[layer]
        disp = within_group_dispersion(
            {gid: vs.group_rows(gid) for gid in vs.group_ids}
        )
        for g in suite:
            if g.eye_invariant:
                assert disp[g.group_id] == 0.0, (layer, g.group_id)
            else:
                assert disp[g.group_id] > 0.0, (layer, g.group_id)


def test_baseline_disperses_everywhere(baseline, suite):
    sets = collect_probe_vectors(baseline, suite, layers=[0, 1])
    for layer in (0, 1):
        vs = sets[layer]
        disp = within_group_dispersion(
            {gid: vs.group_rows(gid) for gid in vs.group_ids}
        )
        for g in suite:
            assert disp[g.group_id] > 0.0, (layer, g.group_id)


def test_explicit_point_and_border_rejection(modified, suite):
    sets = collect_probe_vectors(modified, suite, point=(128, 128), layers=[0])
    assert sets[0].point == (128, 128)
    with pytest.raises(ValidationError, match="border"):
        collect_probe_vectors(modified, suite, point=(5, 128), layers=[0])


def test_layer_range_validated(modified, suite):
    with pytest.raises(ValidationError):
        collect_probe_vectors(modified, suite, layers=[7])
