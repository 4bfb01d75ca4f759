"""
3-D point clouds of users and the free-space Euclidean random matrix built on them.
"""

import logging
from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import pdist, squareform

from rmtscope.ensembles.types import SquareComplexMatrix
from rmtscope.errors import ConfigError, DimensionError, NumericalError
from rmtscope.seeding import make_rng

logger = logging.getLogger(__name__)

MIN_DISTANCE_WAVELENGTHS = 0.01
MAX_RESAMPLING_ATTEMPTS = 1000


@dataclass(frozen=True)
class PointCloud:
    """
    N user positions (meters) inside a cube of side (N / rho)^(1/3), with the
    free-space wavelength lambda0 of the propagation kernel.
    """

    positions: np.ndarray
    rho: float
    lambda0: float
    seed: int

    def __post_init__(self):
        if self.positions.ndim != 2 or self.positions.shape[1] != 3:
            raise DimensionError(f"positions must be N x 3, got {self.positions.shape}")
        if self.rho <= 0 or self.lambda0 <= 0:
            raise ConfigError(f"rho and lambda0 must be > 0, got {self.rho}, {self.lambda0}")

    @property
    def N(self) -> int:
        return self.positions.shape[0]

    @property
    def k0(self) -> float:
        return 2.0 * np.pi / self.lambda0

    @property
    def side(self) -> float:
        return (self.N / self.rho) ** (1.0 / 3.0)

    @property
    def d_min(self) -> float:
        return MIN_DISTANCE_WAVELENGTHS * self.lambda0

    @property
    def density_parameter(self) -> float:
        """rho * lambda0^3, the dimensionless density controlling the eigenvalue cloud."""
        return self.rho * self.lambda0**3


def sample_point_cloud(N: int, rho: float, lambda0: float, seed: int = 0) -> PointCloud:
    """
    Places N points uniformly in the cube, resampling any point closer than
    d_min = lambda0 / 100 to an already placed one.
    """
    if N < 2:
        raise DimensionError(f"a point cloud needs N >= 2, got {N}")
    if rho <= 0 or lambda0 <= 0:
        raise ConfigError(f"rho and lambda0 must be > 0, got rho={rho}, lambda0={lambda0}")

    side = (N / rho) ** (1.0 / 3.0)
    d_min = MIN_DISTANCE_WAVELENGTHS * lambda0
    rng = make_rng(seed)

    positions = np.empty((N, 3))
    for i in range(N):
        for _ in range(MAX_RESAMPLING_ATTEMPTS):
            candidate = rng.uniform(0.0, side, size=3)
            if i == 0:
                break
            distances = np.linalg.norm(positions[:i] - candidate, axis=1)
            if distances.min() >= d_min:
                break
        else:
            raise NumericalError(
                f"could not place point {i} at distance >= {d_min:g} m after "
                f"{MAX_RESAMPLING_ATTEMPTS} attempts (rho*lambda0^3 = {rho * lambda0**3:g} too large)"
            )
        positions[i] = candidate

    logger.debug("Placed %d points in a cube of side %.4g m", N, side)
    return PointCloud(positions=positions, rho=float(rho), lambda0=float(lambda0), seed=seed)


def build_erm(cloud: PointCloud, static: bool = False) -> SquareComplexMatrix:
    """
    A_ij = (1 - delta_ij) exp(i k0 |r_i - r_j|) / |r_i - r_j|.

    The kernel depends only on the distance, so A equals its plain transpose. With
    ``static=True`` the wavenumber is taken as zero (kernel 1/r, real symmetric A).
    """
    distances = pdist(cloud.positions)
    if np.any(distances <= 0.0):
        raise NumericalError("coincident points: the free-space kernel is singular at r = 0")

    k0 = 0.0 if static else cloud.k0
    condensed = np.exp(1j * k0 * distances) / distances
    # squareform fills both triangles from the same condensed values and leaves a zero diagonal
    entries = squareform(condensed.real) + 1j * squareform(condensed.imag)
    return SquareComplexMatrix(entries=entries)
