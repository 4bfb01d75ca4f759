from dataclasses import dataclass
from enum import Enum

import numpy as np

from rmtscope.errors import ConfigError, DimensionError

HERMITIAN_IMAG_TOL = 1e-9


class SpectrumKind(str, Enum):
    HERMITIAN = "hermitian"
    GENERAL = "general"


@dataclass(frozen=True)
class Spectrum:
    """
    Eigenvalues of an n x n matrix. Hermitian spectra are stored real and ascending,
    general spectra complex in solver order.
    """

    eigenvalues: np.ndarray
    n: int
    kind: SpectrumKind
    c: float | None = None

    def __post_init__(self):
        if self.eigenvalues.ndim != 1 or self.eigenvalues.size != self.n:
            raise DimensionError(
                f"spectrum of an n={self.n} matrix must hold {self.n} eigenvalues, "
                f"got shape {self.eigenvalues.shape}"
            )
        if self.kind is SpectrumKind.HERMITIAN and np.iscomplexobj(self.eigenvalues):
            scale = max(np.abs(self.eigenvalues).max(initial=0.0), 1.0)
            if np.abs(self.eigenvalues.imag).max(initial=0.0) > HERMITIAN_IMAG_TOL * scale:
                raise DimensionError("hermitian spectrum has non-negligible imaginary parts")

    @property
    def real(self) -> np.ndarray:
        return np.real(self.eigenvalues)

    @property
    def imag(self) -> np.ndarray:
        return np.imag(self.eigenvalues)

    @property
    def moduli(self) -> np.ndarray:
        return np.abs(self.eigenvalues)

    @property
    def radius(self) -> float:
        """Spectral radius."""
        return float(self.moduli.max(initial=0.0))


@dataclass(frozen=True)
class Histogram:
    bin_edges: np.ndarray
    masses: np.ndarray

    def __post_init__(self):
        if self.bin_edges.size != self.masses.size + 1:
            raise DimensionError("histogram needs one more edge than bins")
        if np.any(np.diff(self.bin_edges) <= 0):
            raise DimensionError("histogram edges must be strictly ascending")
        if np.any(self.masses < 0):
            raise DimensionError("histogram masses must be nonnegative")

    @property
    def widths(self) -> np.ndarray:
        return np.diff(self.bin_edges)

    @property
    def centers(self) -> np.ndarray:
        return 0.5 * (self.bin_edges[:-1] + self.bin_edges[1:])

    def total_mass(self) -> float:
        return float(np.sum(self.masses * self.widths))


@dataclass(frozen=True)
class MpLaw:
    """Marchenko-Pastur law with aspect ratio c = n/N and noise variance sigma2."""

    c: float
    sigma2: float = 1.0

    def __post_init__(self):
        if not (np.isfinite(self.c) and self.c > 0):
            raise ConfigError(f"MP aspect ratio must be finite and > 0, got {self.c}")
        if not (np.isfinite(self.sigma2) and self.sigma2 > 0):
            raise ConfigError(f"MP noise variance must be finite and > 0, got {self.sigma2}")


@dataclass(frozen=True)
class RingLaw:
    """Ring law of a product of L standardized factors with aspect ratio c in (0, 1]."""

    c: float
    L: int = 1

    def __post_init__(self):
        if not 0 < self.c <= 1:
            raise ConfigError(f"ring law needs c in (0, 1], got {self.c}")
        if self.L < 1:
            raise ConfigError(f"ring law needs L >= 1 factors, got {self.L}")
