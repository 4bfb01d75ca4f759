import numpy as np
import pytest
import scipy.linalg

from rmtscope.ensembles import HermitianMatrix, SquareComplexMatrix, sample_ginibre
from rmtscope.errors import DimensionError, NumericalError
from rmtscope.spectra import Spectrum, SpectrumKind, eig_general, eig_hermitian, haar_unitary


def test_eig_hermitian_ascending():
    spec = eig_hermitian(HermitianMatrix(entries=np.diag([3.0, -1.0, 2.0])), c=0.5)
    np.testing.assert_allclose(spec.eigenvalues, [-1.0, 2.0, 3.0])
    assert spec.kind is SpectrumKind.HERMITIAN
    assert spec.c == 0.5


def test_eig_general_triangular():
    A = np.array([[1.0, 5.0, 2.0], [0.0, 2j, 1.0], [0.0, 0.0, -3.0]])
    spec = eig_general(SquareComplexMatrix(entries=A))
    np.testing.assert_allclose(np.sort_complex(spec.eigenvalues), np.sort_complex([1.0, 2j, -3.0]), atol=1e-12)


def test_eig_general_preserves_trace():
    A = sample_ginibre(100, seed=1)
    spec = eig_general(A)
    assert spec.eigenvalues.sum() == pytest.approx(np.trace(A.entries), abs=1e-9)
    assert spec.radius <= 1.5


def test_trace_drift_is_numerical_error(monkeypatch):
    monkeypatch.setattr(scipy.linalg, "eigvals", lambda a, check_finite=True: np.diag(a) + 1.0)
    with pytest.raises(NumericalError):
        eig_general(SquareComplexMatrix(entries=np.eye(3, dtype=complex)))


def test_non_convergence_is_numerical_error(monkeypatch):
    def fail(a, **kwargs):
        raise scipy.linalg.LinAlgError("did not converge")

    monkeypatch.setattr(scipy.linalg, "eigh", fail)
    with pytest.raises(NumericalError):
        eig_hermitian(HermitianMatrix(entries=np.eye(2)))


def test_non_finite_matrices_rejected():
    with pytest.raises(DimensionError):
        SquareComplexMatrix(entries=np.array([[np.nan, 0.0], [0.0, 1.0]]))


def test_spectrum_length_checked():
    with pytest.raises(DimensionError):
        Spectrum(eigenvalues=np.zeros(3), n=4, kind=SpectrumKind.GENERAL)


def test_rotation_has_imaginary_pair():
    spec = eig_general(SquareComplexMatrix(entries=np.array([[0.0, -1.0], [1.0, 0.0]], dtype=complex)))
    np.testing.assert_allclose(np.sort_complex(spec.eigenvalues), [-1j, 1j], atol=1e-12)


def test_eigenvalue_product_is_determinant():
    A = sample_ginibre(30, seed=4)
    product = np.prod(eig_general(A).eigenvalues)
    det = scipy.linalg.det(A.entries)
    assert abs(product - det) <= 1e-4 * abs(det)


def _random_hermitian(n, seed):
    G = sample_ginibre(n, seed=seed).entries
    return 0.5 * (G + G.conj().T)


def test_hermitian_eigenvalues_reconstruct_matrix():
    H = _random_hermitian(40, seed=8)
    spec = eig_hermitian(HermitianMatrix(entries=H))
    _, vectors = scipy.linalg.eigh(H)
    rebuilt = (vectors * spec.real[None, :]) @ vectors.conj().T
    assert np.linalg.norm(H - rebuilt) <= 1e-8 * np.linalg.norm(H)


def test_hermitian_spectrum_invariant_under_unitary_conjugation():
    H = _random_hermitian(40, seed=12)
    U = haar_unitary(40, seed=1)
    conjugated = U @ H @ U.conj().T
    conjugated = 0.5 * (conjugated + conjugated.conj().T)
    before = eig_hermitian(HermitianMatrix(entries=H)).real
    after = eig_hermitian(HermitianMatrix(entries=conjugated)).real
    np.testing.assert_allclose(after, before, atol=1e-8 * np.linalg.norm(H, 2))
