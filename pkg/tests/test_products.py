import numpy as np
import pytest
import scipy.linalg

from rmtscope.ensembles import DataMatrix, NoiseEnsemble, ProductEnsemble, sample_gaussian_matrix
from rmtscope.errors import ConfigError, DimensionError, NumericalError
from rmtscope.spectra import (
    RingLaw,
    eig_general,
    ginibre_product_radial_cdf,
    ginibre_product_spectrum,
    haar_unitary,
    ks_against_cdf,
    ring_law_radii,
    singular_value_equivalent,
    standardized_product,
)
from rmtscope.spectra.products import standardize_rows


def test_haar_unitary_is_unitary():
    U = haar_unitary(40, seed=2)
    np.testing.assert_allclose(U @ U.conj().T, np.eye(40), atol=1e-10)
    np.testing.assert_array_equal(U, haar_unitary(40, seed=2))


def test_singular_value_equivalent_keeps_singular_values():
    X = sample_gaussian_matrix(30, 60, seed=5)
    sve = singular_value_equivalent(X, seed=1)
    expected = scipy.linalg.svdvals(X.entries) / np.sqrt(60)
    np.testing.assert_allclose(scipy.linalg.svdvals(sve.entries), expected, rtol=1e-8)


def test_singular_value_equivalent_needs_wide_matrix():
    with pytest.raises(DimensionError):
        singular_value_equivalent(sample_gaussian_matrix(10, 5), seed=0)


def test_standardize_rows():
    rng = np.random.default_rng(0)
    z = rng.standard_normal((8, 8)) * 3.0 + 1.0
    s = standardize_rows(z)
    np.testing.assert_allclose(s.mean(axis=1), 0.0, atol=1e-12)
    np.testing.assert_allclose(np.mean(np.abs(s) ** 2, axis=1), 1 / 8)


def test_standardize_constant_row_fails():
    z = np.ones((3, 3))
    with pytest.raises(NumericalError):
        standardize_rows(z)


def test_standardized_product_validates_factors():
    with pytest.raises(ConfigError):
        standardized_product([], seed=0)
    with pytest.raises(DimensionError):
        standardized_product([sample_gaussian_matrix(4, 8), sample_gaussian_matrix(4, 6)], seed=0)
    with pytest.raises(DimensionError):
        standardized_product([sample_gaussian_matrix(8, 4)], seed=0)


def test_standardized_product_is_reproducible():
    factors = ProductEnsemble(n=20, N=40, L=2).draw(3)
    a = standardized_product(factors, seed=3)
    b = standardized_product(factors, seed=3)
    np.testing.assert_array_equal(a.eigenvalues, b.eigenvalues)
    assert a.c == pytest.approx(0.5)


@pytest.mark.slow
@pytest.mark.parametrize("L", [1, 2])
def test_product_spectrum_fills_the_ring(L):
    factors = ProductEnsemble(n=300, N=600, L=L).draw(11)
    spec = standardized_product(factors, seed=11)
    inner, outer = ring_law_radii(RingLaw(c=0.5, L=L))
    inside = (spec.moduli >= inner - 0.1) & (spec.moduli <= outer + 0.1)
    assert inside.mean() >= 0.95


@pytest.mark.slow
def test_spread_signal_pulls_eigenvalues_inward():
    noise = ProductEnsemble(n=200, N=400, L=1)
    signal = ProductEnsemble(n=200, N=400, L=1, powers=[1.0], directions="spread", scaling="per_sensor")
    for seed in range(5):
        quiet = standardized_product(noise.draw(seed), seed)
        loud = standardized_product(signal.draw(seed), seed)
        assert np.percentile(loud.moduli, 1) < np.percentile(quiet.moduli, 1)


@pytest.mark.slow
@pytest.mark.parametrize("k", [1, 2, 3])
def test_ginibre_product_radial_law(k):
    spec = ginibre_product_spectrum(k, 400, seed=k)
    assert ks_against_cdf(spec.moduli, lambda r: ginibre_product_radial_cdf(r, k)) <= 0.06


def test_ginibre_product_needs_factors():
    with pytest.raises(ConfigError):
        ginibre_product_spectrum(0, 10, seed=0)


def test_single_factor_product():
    X = NoiseEnsemble(n=10, N=20).draw(0)
    assert standardized_product([X], seed=0).n == 10


def test_sve_of_isometry_is_unitary():
    n, N = 4, 8
    rows = np.sqrt(N) * haar_unitary(N, seed=2)[:n]
    W = singular_value_equivalent(DataMatrix.from_array(rows), seed=5).entries
    np.testing.assert_allclose(W @ W.conj().T, np.eye(n), atol=1e-10)


@pytest.mark.slow
def test_sve_of_square_noise_follows_circular_law():
    X = sample_gaussian_matrix(500, 500, seed=3)
    moduli = eig_general(singular_value_equivalent(X, seed=4)).moduli
    assert ks_against_cdf(moduli, lambda r: np.clip(r**2, 0.0, 1.0)) <= 0.06
