import numpy as np
import pytest

from sketchface.errors import ValidationError
from sketchface.probe.pca import pca_project, within_group_dispersion


def eigendecomposition_oracle(vectors, k=2):
    """Dense symmetric eigendecomposition of the sample covariance."""
    x = np.asarray(vectors, dtype=np.float64)
    centered = x - x.mean(axis=0, keepdims=True)
    cov = centered.T @ centered / (x.shape[0] - 1)
    eigvals, eigvecs = np.linalg.eigh(cov)
    order = np.argsort(eigvals)[::-1][:k]
    axes = eigvecs[:, order].T
    return centered @ axes.T, axes, eigvals[order]


def test_identical_vectors_project_to_origin():
    x = np.tile(np.arange(8.0), (5, 1))
    proj = pca_project(x)
    assert np.allclose(proj.points, 0.0)
    assert np.allclose(proj.explained_variance, 0.0)


def test_collinear_vectors_have_zero_second_variance():
    rng = np.random.default_rng(0)
    direction = rng.normal(size=16)
    x = np.outer(rng.normal(size=12), direction)
    proj = pca_project(x)
    assert proj.explained_variance[1] == pytest.approx(0.0, abs=1e-9)


@pytest.mark.parametrize("trial", range(20))
def test_matches_eigendecomposition_oracle(trial):
    rng = np.random.default_rng(100 + trial)
    n = int(rng.integers(5, 201))
    c = int(rng.integers(8, 769))
    x = rng.normal(size=(n, c)) * rng.uniform(0.1, 5.0)
    proj = pca_project(x)
    oracle_points, oracle_axes, oracle_vals = eigendecomposition_oracle(x)
    assert np.allclose(proj.explained_variance, oracle_vals, atol=1e-6, rtol=1e-6)
    for i in range(2):
        sign = 1.0 if np.dot(proj.component_axes[i], oracle_axes[i]) >= 0 else -1.0
        assert np.allclose(proj.component_axes[i], sign * oracle_axes[i], atol=1e-6)
        assert np.allclose(proj.points[:, i], sign * oracle_points[:, i], atol=1e-6)


def test_axes_orthonormal_and_variance_descending():
    rng = np.random.default_rng(1)
    proj = pca_project(rng.normal(size=(30, 12)))
    gram = proj.component_axes @ proj.component_axes.T
    assert np.allclose(gram, np.eye(2), atol=1e-12)
    assert proj.explained_variance[0] >= proj.explained_variance[1] >= 0.0


def test_sign_convention_is_deterministic():
    rng = np.random.default_rng(2)
    x = rng.normal(size=(40, 20))
    a = pca_project(x)
    b = pca_project(x.copy())
    assert a.points.tobytes() == b.points.tobytes()
    assert a.component_axes.tobytes() == b.component_axes.tobytes()
    for i in range(2):
        pivot = np.argmax(np.abs(a.component_axes[i]))
        assert a.component_axes[i, pivot] > 0


def test_projection_contracts_pairwise_distances():
    rng = np.random.default_rng(3)
    x = rng.normal(size=(25, 40))
    proj = pca_project(x)
    for i in range(len(x)):
        for j in range(i + 1, len(x)):
            original = np.linalg.norm(x[i] - x[j])
            projected = np.linalg.norm(proj.points[i] - proj.points[j])
            assert projected <= original + 1e-6


def test_input_validation():
    with pytest.raises(ValidationError):
        pca_project(np.ones((1, 8)))
    with pytest.raises(ValidationError):
        pca_project(np.ones((5, 1)))
    with pytest.raises(ValidationError):
        pca_project(np.ones(8))


class TestDispersion:
    def test_identical_points_zero(self):
        assert within_group_dispersion({1: np.ones((6, 2))}) == {1: 0.0}

    def test_two_points_distance_two(self):
        pts = np.array([[0.0, 0.0], [2.0, 0.0]])
        assert within_group_dispersion({3: pts})[3] == pytest.approx(1.0)

    def test_random_cloud_matches_direct_recomputation(self):
        rng = np.random.default_rng(4)
        pts = rng.normal(size=(50, 2))
        got = within_group_dispersion({7: pts})[7]
        centroid = pts.mean(axis=0)
        expected = float(np.mean([np.linalg.norm(p - centroid) for p in pts]))
        assert got == pytest.approx(expected, rel=1e-12)

    def test_works_in_raw_feature_space(self):
        rng = np.random.default_rng(5)
        pts = rng.normal(size=(10, 96))
        assert within_group_dispersion({1: pts})[1] > 0

    def test_empty_group_rejected(self):
        with pytest.raises(ValidationError):
            within_group_dispersion({1: np.ones((0, 2))})
