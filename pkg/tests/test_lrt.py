import numpy as np
import pytest

from rmtscope.detection import LrtModel, deflection, lrt_statistic
from rmtscope.errors import ConfigError, DimensionError, NumericalError


def test_white_noise_statistic_and_deflection():
    model = LrtModel.white([1.0, 2.0, 2.0], sigma2=0.5)
    assert lrt_statistic(np.array([1.0, 0.0, 1.0]), model) == pytest.approx(6.0)
    assert deflection(model) == pytest.approx(18.0)


def test_full_covariance_reduces_to_white():
    m = np.array([0.5, -1.0, 2.0])
    y = np.array([1.0, 1.0, -0.5])
    full = LrtModel(m=m, R=2.0 * np.eye(3))
    white = LrtModel.white(m, sigma2=2.0)
    assert lrt_statistic(y, full) == pytest.approx(lrt_statistic(y, white))
    assert deflection(full) == pytest.approx(deflection(white))


def test_complex_statistic_is_real_part():
    model = LrtModel.white([1j, 1.0], sigma2=1.0)
    assert lrt_statistic(np.array([1j, 2.0]), model) == pytest.approx(3.0)


def test_deflection_is_output_snr(rng):
    m = np.array([1.0, 0.5, -0.5, 0.2])
    A = rng.standard_normal((4, 4))
    R = A @ A.T + 0.5 * np.eye(4)
    R = 0.5 * (R + R.T)
    model = LrtModel(m=m, R=R)
    d2 = deflection(model)

    noise = rng.multivariate_normal(np.zeros(4), R, size=20000)
    h0 = np.array([lrt_statistic(y, model) for y in noise])
    h1 = np.array([lrt_statistic(y + m, model) for y in noise])
    assert h1.mean() - h0.mean() == pytest.approx(d2, rel=1e-9)
    assert h0.var() == pytest.approx(d2, rel=0.05)


def test_singular_covariance_rejected():
    R = np.array([[1.0, 1.0], [1.0, 1.0]])
    with pytest.raises(NumericalError):
        LrtModel(m=np.ones(2), R=R)


def test_non_hermitian_covariance_rejected():
    with pytest.raises(ConfigError):
        LrtModel(m=np.ones(2), R=np.array([[2.0, 1.0], [0.0, 2.0]]))


def test_model_validation():
    with pytest.raises(ConfigError):
        LrtModel(m=np.ones(2))
    with pytest.raises(NumericalError):
        LrtModel.white(np.ones(2), sigma2=0.0)
    with pytest.raises(DimensionError):
        LrtModel(m=np.ones(2), R=np.eye(3))
    with pytest.raises(DimensionError):
        lrt_statistic(np.ones(3), LrtModel.white(np.ones(2), sigma2=1.0))


def test_coloured_noise_example():
    model = LrtModel(m=np.array([1.0, 1.0]), R=np.diag([1.0, 4.0]))
    assert lrt_statistic(np.array([2.0, 2.0]), model) == pytest.approx(2.5)
    assert deflection(LrtModel(m=np.array([1.0, 2.0]), R=np.diag([1.0, 4.0]))) == pytest.approx(2.0)


def test_identity_covariance_examples():
    assert lrt_statistic(np.array([1.0, 0.0]), LrtModel(m=np.array([1.0, 0.0]), R=np.eye(2))) == pytest.approx(1.0)
    assert deflection(LrtModel(m=np.array([3.0, 4.0]), R=np.eye(2))) == pytest.approx(25.0)


def test_statistic_is_linear_in_observation():
    rng = np.random.default_rng(3)
    A = rng.standard_normal((4, 4))
    model = LrtModel(m=rng.standard_normal(4), R=A @ A.T + 4 * np.eye(4))
    y1, y2 = rng.standard_normal(4), rng.standard_normal(4)
    combined = lrt_statistic(2.5 * y1 - 0.75 * y2, model)
    assert combined == pytest.approx(2.5 * lrt_statistic(y1, model) - 0.75 * lrt_statistic(y2, model))


def test_deflection_invariant_under_rotation():
    rng = np.random.default_rng(8)
    A = rng.standard_normal((3, 3))
    m, R = rng.standard_normal(3), A @ A.T + np.eye(3)
    Q, _ = np.linalg.qr(rng.standard_normal((3, 3)))
    rotated = Q @ R @ Q.T
    rotated = 0.5 * (rotated + rotated.T)
    assert deflection(LrtModel(m=Q @ m, R=rotated)) == pytest.approx(deflection(LrtModel(m=m, R=R)), rel=1e-10)
