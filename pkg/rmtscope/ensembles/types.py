from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Sequence, Union

import numpy as np

from rmtscope.errors import ConfigError, DimensionError

HERMITIAN_RTOL = 1e-12


class Field(str, Enum):
    REAL = "real"
    COMPLEX = "complex"


class Hypothesis(str, Enum):
    H0 = "H0"
    H1 = "H1"


class Distribution(str, Enum):
    GAUSSIAN = "gaussian"
    RADEMACHER = "rademacher"


class Directions(str, Enum):
    CANONICAL = "canonical"
    SPREAD = "spread"


class Scaling(str, Enum):
    TOTAL = "total"
    PER_SENSOR = "per_sensor"


def _require_finite(entries: np.ndarray, what: str) -> None:
    if not np.all(np.isfinite(entries)):
        raise DimensionError(f"{what} has non-finite entries")


@dataclass(frozen=True)
class DataMatrix:
    """
    An n x N sample matrix (n sensors, N samples) together with the parameters
    that generated it.
    """

    entries: np.ndarray
    sigma: float
    field: Field
    hypothesis: Hypothesis
    seed: int

    def __post_init__(self):
        if self.entries.ndim != 2:
            raise DimensionError(f"data matrix must be 2-D, got shape {self.entries.shape}")
        if self.entries.shape[0] < 1 or self.entries.shape[1] < 1:
            raise DimensionError(f"data matrix needs n, N >= 1, got {self.entries.shape}")
        if self.sigma < 0:
            raise ConfigError(f"sigma must be >= 0, got {self.sigma}")

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    @property
    def N(self) -> int:
        return self.entries.shape[1]

    @property
    def c(self) -> float:
        return self.n / self.N

    def scaled(self, alpha: float) -> "DataMatrix":
        return DataMatrix(
            entries=alpha * self.entries,
            sigma=abs(alpha) * self.sigma,
            field=self.field,
            hypothesis=self.hypothesis,
            seed=self.seed,
        )

    @classmethod
    def from_array(
        cls,
        entries,
        sigma: float = 1.0,
        hypothesis: Hypothesis = Hypothesis.H0,
        seed: int = 0,
    ) -> "DataMatrix":
        entries = np.asarray(entries)
        is_complex = np.iscomplexobj(entries)
        entries = entries.astype(np.complex128 if is_complex else np.float64)
        return cls(
            entries=entries,
            sigma=sigma,
            field=Field.COMPLEX if is_complex else Field.REAL,
            hypothesis=hypothesis,
            seed=seed,
        )


@dataclass(frozen=True)
class SquareComplexMatrix:
    entries: np.ndarray

    def __post_init__(self):
        if self.entries.ndim != 2 or self.entries.shape[0] != self.entries.shape[1]:
            raise DimensionError(f"expected a square matrix, got shape {self.entries.shape}")
        _require_finite(self.entries, "square matrix")

    @property
    def n(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True)
class HermitianMatrix:
    entries: np.ndarray

    def __post_init__(self):
        a = self.entries
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise DimensionError(f"expected a square matrix, got shape {a.shape}")
        _require_finite(a, "hermitian matrix")
        scale = max(np.abs(a).max(initial=0.0), 1.0)
        if np.abs(a - a.conj().T).max(initial=0.0) > HERMITIAN_RTOL * scale:
            raise DimensionError("matrix is not Hermitian within tolerance")

    @property
    def n(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True)
class SignalSpec:
    """
    Rank-k signal model S = sum_k sqrt(p_k) h_k g_k^T.

    ``directions`` selects h_k: the first k canonical vectors, the first k orthonormal
    DCT-II vectors (``spread``; the first one is the uniform direction) or an explicit
    n x k array whose columns are orthonormalized. ``scaling`` decides whether p_k is the
    per-column power of a unit-norm direction (``total``) or the average per-sensor SNR
    (``per_sensor``, direction scaled by sqrt(n)).
    """

    powers: Sequence[float]
    directions: Union[Directions, np.ndarray] = Directions.CANONICAL
    scaling: Scaling = Scaling.TOTAL
    mean_vector: Optional[np.ndarray] = field(default=None)

    def __post_init__(self):
        powers = np.asarray(self.powers, dtype=float)
        if powers.ndim != 1 or powers.size < 1:
            raise ConfigError("signal needs at least one component power")
        if np.any(powers < 0) or not np.all(np.isfinite(powers)):
            raise ConfigError(f"signal powers must be finite and >= 0, got {list(powers)}")
        object.__setattr__(self, "powers", tuple(float(p) for p in powers))
        if not isinstance(self.directions, np.ndarray):
            object.__setattr__(self, "directions", Directions(self.directions))
        object.__setattr__(self, "scaling", Scaling(self.scaling))

    @property
    def rank(self) -> int:
        return len(self.powers)

    def direction_matrix(self, n: int) -> np.ndarray:
        """Returns the n x k matrix of unit-norm, mutually orthogonal directions."""
        k = self.rank
        if k > n:
            raise DimensionError(f"signal rank {k} exceeds sensor dimension n={n}")

        if isinstance(self.directions, np.ndarray):
            h = np.asarray(self.directions)
            if h.ndim == 1:
                h = h[:, None]
            if h.shape != (n, k):
                raise DimensionError(f"explicit directions must have shape {(n, k)}, got {h.shape}")
            q, _ = np.linalg.qr(h)
            return q

        if self.directions is Directions.CANONICAL:
            return np.eye(n, k)

        # orthonormal DCT-II basis, column j is the j-th cosine mode
        rows = np.arange(n)[:, None]
        modes = np.arange(k)[None, :]
        h = np.cos(np.pi * modes * (2 * rows + 1) / (2 * n)) * np.sqrt(2.0 / n)
        h[:, 0] = 1.0 / np.sqrt(n)
        return h
