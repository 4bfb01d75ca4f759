"""
Products of non-Hermitian random matrices: singular value equivalents, the
row-standardized ring-law product and products of Ginibre matrices.
"""

from typing import Sequence

import numpy as np
import scipy.linalg

from rmtscope.ensembles.covariance import sample_covariance
from rmtscope.ensembles.gaussian import sample_ginibre
from rmtscope.ensembles.types import DataMatrix, SquareComplexMatrix
from rmtscope.errors import ConfigError, DimensionError, NumericalError
from rmtscope.seeding import Stream, derive_seed, make_rng
from rmtscope.spectra.eigen import eig_general
from rmtscope.spectra.types import Spectrum


def haar_unitary(n: int, seed: int) -> np.ndarray:
    """Haar unitary from the QR factorization of a complex Ginibre draw, with R-phase correction."""
    rng = make_rng(seed)
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2.0)
    q, r = scipy.linalg.qr(z)
    diagonal = np.diag(r)
    phases = diagonal / np.abs(diagonal)
    return q * phases[None, :]


def covariance_sqrt(X: DataMatrix) -> np.ndarray:
    """((1/N) X X^H)^(1/2) through the eigendecomposition; tiny negative eigenvalues clip to 0."""
    cov = sample_covariance(X).entries
    values, vectors = scipy.linalg.eigh(cov)
    roots = np.sqrt(np.clip(values, 0.0, None))
    return (vectors * roots[None, :]) @ vectors.conj().T


def singular_value_equivalent(X: DataMatrix, seed: int) -> SquareComplexMatrix:
    """
    P W with P = ((1/N) X X^H)^(1/2) and W an independent Haar unitary: a square
    matrix with the singular values of X / sqrt(N) and isotropic eigenvectors.
    """
    if X.n > X.N:
        raise DimensionError(f"singular value equivalent needs n <= N, got n={X.n}, N={X.N}")
    return SquareComplexMatrix(entries=covariance_sqrt(X) @ haar_unitary(X.n, seed))


def standardize_rows(z: np.ndarray) -> np.ndarray:
    """Each row shifted to mean 0 and scaled to variance 1/n."""
    n = z.shape[0]
    centered = z - z.mean(axis=1, keepdims=True)
    spread = np.sqrt(np.mean(np.abs(centered) ** 2, axis=1, keepdims=True))
    if np.any(spread == 0.0):
        raise NumericalError("cannot standardize a constant row of the product matrix")
    return centered / (spread * np.sqrt(n))


def standardized_product(Xs: Sequence[DataMatrix], seed: int) -> Spectrum:
    """Eigenvalues of the row-standardized product of the factors' singular value equivalents."""
    if len(Xs) == 0:
        raise ConfigError("the product needs at least one factor")
    n, N = Xs[0].n, Xs[0].N
    for X in Xs:
        if (X.n, X.N) != (n, N):
            raise DimensionError(
                f"all factors must share one shape, got {(X.n, X.N)} and {(n, N)}"
            )
    if n > N:
        raise DimensionError(f"the ring-law product needs n <= N, got n={n}, N={N}")

    product = np.eye(n, dtype=np.complex128)
    for ell, X in enumerate(Xs):
        product = product @ singular_value_equivalent(X, derive_seed(seed, ell, Stream.HAAR)).entries

    standardized = SquareComplexMatrix(entries=standardize_rows(product))
    return eig_general(standardized, c=n / N)


def ginibre_product_spectrum(k: int, n: int, seed: int) -> Spectrum:
    """Eigenvalues of the product of k independent Ginibre matrices of side n."""
    if k < 1:
        raise ConfigError(f"need k >= 1 factors, got {k}")
    product = sample_ginibre(n, derive_seed(seed, 0, Stream.FACTOR)).entries
    for j in range(1, k):
        product = product @ sample_ginibre(n, derive_seed(seed, j, Stream.FACTOR)).entries
    return eig_general(SquareComplexMatrix(entries=product))
