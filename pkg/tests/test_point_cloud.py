import numpy as np
import pytest
from scipy.spatial import cKDTree
from scipy.spatial.distance import pdist

from rmtscope.ensembles import PointCloud, build_erm, sample_point_cloud
from rmtscope.errors import ConfigError, DimensionError, NumericalError


def test_points_inside_cube_and_separated():
    cloud = sample_point_cloud(200, rho=1.0, lambda0=1.0, seed=3)
    assert cloud.positions.shape == (200, 3)
    assert np.all(cloud.positions >= 0) and np.all(cloud.positions <= cloud.side)
    assert pdist(cloud.positions).min() >= cloud.d_min


def test_point_cloud_reproducible():
    a = sample_point_cloud(50, rho=0.5, lambda0=1.0, seed=9)
    b = sample_point_cloud(50, rho=0.5, lambda0=1.0, seed=9)
    np.testing.assert_array_equal(a.positions, b.positions)


def test_density_parameter():
    cloud = sample_point_cloud(10, rho=0.01, lambda0=2.0, seed=1)
    assert cloud.density_parameter == pytest.approx(0.08)
    assert cloud.k0 == pytest.approx(np.pi)


@pytest.mark.slow
def test_nearest_neighbour_distance_matches_density():
    rho = 1.0
    cloud = sample_point_cloud(1000, rho=rho, lambda0=1.0, seed=21)
    distances, _ = cKDTree(cloud.positions).query(cloud.positions, k=2)
    # median nearest-neighbour distance of a homogeneous Poisson process
    assert np.median(distances[:, 1]) == pytest.approx(0.55 * rho ** (-1 / 3), rel=0.2)


def test_invalid_cloud_parameters():
    with pytest.raises(DimensionError):
        sample_point_cloud(1, rho=1.0, lambda0=1.0)
    with pytest.raises(ConfigError):
        sample_point_cloud(10, rho=0.0, lambda0=1.0)


def test_infeasible_density_raises():
    with pytest.raises(NumericalError):
        sample_point_cloud(50, rho=1e9, lambda0=1.0, seed=0)


def test_erm_symmetric_with_zero_diagonal():
    cloud = sample_point_cloud(40, rho=1.0, lambda0=1.0, seed=4)
    A = build_erm(cloud).entries
    np.testing.assert_array_equal(A, A.T)
    np.testing.assert_array_equal(np.diag(A), 0)


def test_erm_kernel_values():
    cloud = sample_point_cloud(30, rho=1.0, lambda0=1.0, seed=4)
    A = build_erm(cloud).entries
    d = np.linalg.norm(cloud.positions[0] - cloud.positions[1])
    assert A[0, 1] == pytest.approx(np.exp(1j * cloud.k0 * d) / d)
    assert np.abs(A[0, 1]) == pytest.approx(1 / d)


def test_static_erm_is_real():
    cloud = sample_point_cloud(30, rho=1.0, lambda0=1.0, seed=4)
    A = build_erm(cloud, static=True).entries
    assert not np.any(A.imag)


def test_coincident_points_rejected():
    positions = np.zeros((3, 3))
    positions[2] = 1.0
    cloud = PointCloud(positions=positions, rho=1.0, lambda0=1.0, seed=0)
    with pytest.raises(NumericalError):
        build_erm(cloud)


def test_cube_side_from_density():
    cloud = sample_point_cloud(1000, rho=8.0, lambda0=1.0, seed=2)
    assert cloud.side == pytest.approx(5.0, abs=1e-12)
    assert cloud.positions.max() <= 5.0


def test_two_point_cloud():
    cloud = sample_point_cloud(2, rho=1.0, lambda0=1.0, seed=6)
    assert cloud.side == pytest.approx(2 ** (1 / 3))
    assert np.all(cloud.positions <= cloud.side)
    assert pdist(cloud.positions)[0] >= cloud.d_min
    assert cloud.k0 * cloud.lambda0 == pytest.approx(2 * np.pi, abs=1e-12)


def test_two_point_erm_closed_form():
    cloud = PointCloud(positions=np.array([[0.0, 0.0, 0.0], [0.3, 0.4, 0.0]]), rho=1.0, lambda0=1.0, seed=0)
    A = build_erm(cloud).entries
    expected = np.exp(1j * cloud.k0 * 0.5) / 0.5
    np.testing.assert_allclose(A, [[0.0, expected], [expected, 0.0]], rtol=1e-12)
