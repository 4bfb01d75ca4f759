import numpy as np

from rmtscope.ensembles.types import DataMatrix, HermitianMatrix
from rmtscope.errors import ConfigError


def sample_covariance(X: DataMatrix) -> HermitianMatrix:
    """(1/N) X X^H, the n x n outer-product form."""
    a = X.entries
    cov = (a @ a.conj().T) / X.N
    # symmetrize to remove rounding asymmetry of the product
    cov = 0.5 * (cov + cov.conj().T)
    return HermitianMatrix(entries=cov)


def hollow_wishart(X: DataMatrix, sigma: float) -> HermitianMatrix:
    """Sample covariance minus sigma^2 I: the aggregated noise deviation W_n."""
    if sigma < 0:
        raise ConfigError(f"sigma must be >= 0, got {sigma}")
    cov = sample_covariance(X).entries
    return HermitianMatrix(entries=cov - sigma**2 * np.eye(X.n))


def normalized_trace(H: HermitianMatrix) -> float:
    """(1/n) Tr(H), real by Hermitian symmetry."""
    return float(np.real(np.trace(H.entries))) / H.n
