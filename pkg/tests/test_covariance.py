import numpy as np
import pytest

from rmtscope.detection import trace_statistic
from rmtscope.ensembles import (
    DataMatrix,
    hollow_wishart,
    normalized_trace,
    sample_covariance,
    sample_gaussian_matrix,
)
from rmtscope.errors import ConfigError


def test_sample_covariance_outer_product_form():
    X = sample_gaussian_matrix(5, 12, seed=3)
    expected = X.entries @ X.entries.conj().T / 12
    np.testing.assert_allclose(sample_covariance(X).entries, expected, atol=1e-14)


def test_sample_covariance_of_known_matrix():
    X = DataMatrix.from_array([[1.0, -1.0], [2.0, 0.0]])
    np.testing.assert_allclose(sample_covariance(X).entries, [[1.0, 1.0], [1.0, 2.0]])


def test_hollow_wishart_subtracts_noise_level():
    X = sample_gaussian_matrix(6, 10, sigma=2.0, seed=1)
    W = hollow_wishart(X, 2.0).entries
    np.testing.assert_allclose(W + 4.0 * np.eye(6), sample_covariance(X).entries, atol=1e-13)


def test_hollow_wishart_rejects_negative_sigma():
    with pytest.raises(ConfigError):
        hollow_wishart(sample_gaussian_matrix(3, 3), -1.0)


def test_normalized_trace_matches_frobenius_form():
    X = sample_gaussian_matrix(20, 35, sigma=1.3, seed=2)
    assert normalized_trace(hollow_wishart(X, 1.3)) == pytest.approx(trace_statistic(X, 1.3), abs=1e-12)


def test_normalized_trace_mean_is_zero():
    traces = [normalized_trace(hollow_wishart(sample_gaussian_matrix(200, 200, seed=s), 1.0)) for s in range(20)]
    # standard deviation of each trace is 1/200
    assert abs(np.mean(traces)) < 5 * (1 / 200) / np.sqrt(20)


@pytest.mark.slow
@pytest.mark.parametrize("field, per_entry", [("real", 2.0), ("complex", 1.0)])
def test_normalized_trace_variance(field, per_entry):
    n = N = 60
    traces = np.array(
        [normalized_trace(hollow_wishart(sample_gaussian_matrix(n, N, field=field, seed=s), 1.0)) for s in range(2000)]
    )
    predicted = per_entry / (n * N)
    assert traces.var(ddof=1) == pytest.approx(predicted, rel=0.2)


@pytest.mark.parametrize("n, N", [(10, 3), (5, 50), (30, 30)])
def test_sample_covariance_is_positive_semidefinite(n, N):
    cov = sample_covariance(sample_gaussian_matrix(n, N, seed=n + N)).entries
    assert np.linalg.eigvalsh(cov).min() >= -1e-9 * np.linalg.norm(cov, 2)


def test_orthonormal_columns_give_scaled_identity():
    cov = sample_covariance(DataMatrix.from_array(np.eye(2))).entries
    np.testing.assert_allclose(cov, 0.5 * np.eye(2), atol=1e-15)


def test_single_column_is_rank_one():
    cov = sample_covariance(DataMatrix.from_array([[1.0], [2.0], [2.0]])).entries
    np.testing.assert_allclose(np.linalg.eigvalsh(cov), [0.0, 0.0, 9.0], atol=1e-12)


def test_normalized_trace_concentrates_with_size():
    spreads = []
    for n in (50, 100):
        values = [trace_statistic(sample_gaussian_matrix(n, n, seed=s), sigma=1.0) for s in range(500)]
        spreads.append(np.std(values))
    assert 1.5 < spreads[0] / spreads[1] < 2.7
