"""
Known-mean Gaussian likelihood ratio test (shared covariance) and its deflection.

The sufficient statistic is the whitened matched filter l(y) = m^T R^{-1} y and the
deflection d^2 = m^T R^{-1} m, which reduces to ||m||^2 / sigma^2 for white noise.
For complex vectors the statistic is Re(m^H R^{-1} y).
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np
import scipy.linalg

from rmtscope.errors import ConfigError, DimensionError, NumericalError

PD_RTOL = 1e-12


@dataclass(frozen=True)
class LrtModel:
    """
    Mean vector m and shared covariance R. Leave ``R`` out and pass ``sigma2`` for the
    white-noise case R = sigma2 I.
    """

    m: np.ndarray
    R: Optional[np.ndarray] = None
    sigma2: Optional[float] = None

    def __post_init__(self):
        m = np.atleast_1d(np.asarray(self.m))
        if m.ndim != 1:
            raise DimensionError(f"mean must be a vector, got shape {m.shape}")
        object.__setattr__(self, "m", m)

        if self.R is None:
            if self.sigma2 is None:
                raise ConfigError("LrtModel needs either a covariance R or a white-noise sigma2")
            if not self.sigma2 > 0:
                raise NumericalError(f"white-noise variance must be > 0, got {self.sigma2}")
            return

        R = np.asarray(self.R)
        if R.shape != (m.size, m.size):
            raise DimensionError(f"covariance must be {m.size} x {m.size}, got {R.shape}")
        if not np.allclose(R, R.conj().T, rtol=1e-12, atol=0.0):
            raise ConfigError("covariance must be Hermitian")
        eigenvalues = np.linalg.eigvalsh(R)
        if eigenvalues.min() <= PD_RTOL * max(np.abs(eigenvalues).max(), np.finfo(float).tiny):
            raise NumericalError("covariance is singular or not positive definite")
        object.__setattr__(self, "R", R)

    @property
    def n(self) -> int:
        return self.m.size

    @classmethod
    def white(cls, m, sigma2: float) -> "LrtModel":
        return cls(m=np.asarray(m), sigma2=sigma2)

    def whitened_mean(self) -> np.ndarray:
        """R^{-1} m."""
        if self.R is None:
            return self.m / self.sigma2
        factor = scipy.linalg.cho_factor(self.R)
        return scipy.linalg.cho_solve(factor, self.m)


def lrt_statistic(y, model: LrtModel) -> float:
    y = np.asarray(y)
    if y.shape != (model.n,):
        raise DimensionError(f"observation must have shape {(model.n,)}, got {y.shape}")
    if model.R is None:
        return float(np.real(np.vdot(model.m, y))) / model.sigma2
    return float(np.real(np.vdot(model.whitened_mean(), y)))


def deflection(model: LrtModel) -> float:
    if model.R is None:
        return float(np.real(np.vdot(model.m, model.m))) / model.sigma2
    return float(np.real(np.vdot(model.m, model.whitened_mean())))
