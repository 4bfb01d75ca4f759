from typing import Callable

import numpy as np
from scipy import stats

from rmtscope.errors import DimensionError


def ks_against_cdf(samples, cdf: Callable) -> float:
    """One-sample Kolmogorov-Smirnov distance between samples and a reference CDF."""
    samples = np.asarray(samples, dtype=float)
    if samples.size == 0:
        raise DimensionError("KS distance needs at least one sample")
    return float(stats.kstest(samples, cdf).statistic)


def _quadrant_fractions(origins: np.ndarray, points: np.ndarray) -> np.ndarray:
    right = points.real[None, :] > origins.real[:, None]
    above = points.imag[None, :] > origins.imag[:, None]
    return np.stack(
        [
            np.mean(right & above, axis=1),
            np.mean(~right & above, axis=1),
            np.mean(~right & ~above, axis=1),
            np.mean(right & ~above, axis=1),
        ],
        axis=1,
    )


def ks_2d(first, second) -> float:
    """
    Two-sample KS statistic for point clouds in the complex plane (Fasano-Franceschini):
    the largest quadrant-fraction difference, with quadrants centred on every sample
    point, averaged over the two choices of origin set.
    """
    first = np.asarray(first, dtype=np.complex128).ravel()
    second = np.asarray(second, dtype=np.complex128).ravel()
    if first.size == 0 or second.size == 0:
        raise DimensionError("2-D KS distance needs two non-empty samples")

    distances = []
    for origins in (first, second):
        gap = np.abs(_quadrant_fractions(origins, first) - _quadrant_fractions(origins, second))
        distances.append(gap.max())
    return float(np.mean(distances))
