import math
from typing import Literal, Union

import numpy as np

from rmtscope.errors import ConfigError, DimensionError
from rmtscope.spectra.laws import mp_cdf
from rmtscope.spectra.types import Histogram, MpLaw, Spectrum, SpectrumKind

MIN_AUTO_BINS = 16
# below this fraction of the span the interquartile width is round-off
DEGENERATE_WIDTH = 1e-9

Bins = Union[int, Literal["auto"]]


def freedman_diaconis_bins(values: np.ndarray) -> int:
    """
    Freedman-Diaconis bin count, never fewer than 16 bins and never more than
    max(16, ceil(sqrt(size))). A spectrum whose interquartile range collapses
    (the zero atom of a covariance with n > 4N) falls back to the floor.
    """
    span = float(values.max() - values.min())
    q75, q25 = np.percentile(values, [75, 25])
    width = 2.0 * (q75 - q25) / values.size ** (1.0 / 3.0)
    if span <= 0.0 or width <= DEGENERATE_WIDTH * span:
        return MIN_AUTO_BINS
    ceiling = max(MIN_AUTO_BINS, math.ceil(math.sqrt(values.size)))
    return min(max(MIN_AUTO_BINS, int(math.ceil(span / width))), ceiling)


def esd_histogram(spec: Spectrum, bins: Bins = "auto") -> Histogram:
    """Density-normalized histogram of a hermitian spectrum (sum of mass x width = 1)."""
    if spec.kind is not SpectrumKind.HERMITIAN:
        raise DimensionError("esd_histogram needs a hermitian spectrum")
    values = spec.real
    if values.size == 0:
        raise DimensionError("cannot histogram an empty spectrum")

    if bins == "auto":
        count = freedman_diaconis_bins(values)
    elif isinstance(bins, (int, np.integer)) and bins >= 1:
        count = int(bins)
    else:
        raise ConfigError(f"bins must be a positive integer or 'auto', got {bins!r}")

    masses, edges = np.histogram(values, bins=count, density=True)
    return Histogram(bin_edges=edges, masses=masses)


def mp_bin_density(edges: np.ndarray, law: MpLaw) -> np.ndarray:
    """MP probability of each bin divided by its width: the histogram-level reference."""
    cdf = mp_cdf(np.asarray(edges, dtype=float), law)
    return np.diff(cdf) / np.diff(edges)
