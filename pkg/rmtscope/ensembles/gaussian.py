"""
Seeded samplers for the noise, Ginibre and signal-plus-noise ensembles.

Every sampler is a pure function of its parameters and seed: the same call twice
returns bit-identical entries.
"""

import logging

import numpy as np

from rmtscope.ensembles.types import (
    DataMatrix,
    Distribution,
    Field,
    Hypothesis,
    Scaling,
    SignalSpec,
    SquareComplexMatrix,
)
from rmtscope.errors import ConfigError, DimensionError
from rmtscope.seeding import Stream, derive_seed, make_rng

logger = logging.getLogger(__name__)


def _check_dims(n: int, N: int) -> None:
    if n < 1 or N < 1:
        raise DimensionError(f"matrix dimensions must be >= 1, got n={n}, N={N}")


def _unit_entries(
    rng: np.random.Generator, shape, field: Field, distribution: Distribution
) -> np.ndarray:
    """Zero-mean entries with E|x|^2 = 1 (each real part 1/2 in the complex case)."""
    if distribution is Distribution.GAUSSIAN:
        if field is Field.REAL:
            return rng.standard_normal(shape)
        return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)

    def signs() -> np.ndarray:
        return rng.integers(0, 2, size=shape) * 2.0 - 1.0

    if field is Field.REAL:
        return signs()
    return (signs() + 1j * signs()) / np.sqrt(2.0)


def sample_gaussian_matrix(
    n: int,
    N: int,
    sigma: float = 1.0,
    field: Field | str = Field.COMPLEX,
    seed: int = 0,
    distribution: Distribution | str = Distribution.GAUSSIAN,
) -> DataMatrix:
    """
    i.i.d. noise matrix with total entry variance sigma^2.
    Complex entries are circularly symmetric; ``distribution="rademacher"`` swaps the
    Gaussian for random signs with the same first two moments.
    """
    _check_dims(n, N)
    if sigma < 0:
        raise ConfigError(f"sigma must be >= 0, got {sigma}")
    field = Field(field)
    rng = make_rng(seed)
    entries = sigma * _unit_entries(rng, (n, N), field, Distribution(distribution))
    return DataMatrix(
        entries=entries,
        sigma=float(sigma),
        field=field,
        hypothesis=Hypothesis.H0,
        seed=seed,
    )


def sample_ginibre(n: int, seed: int = 0) -> SquareComplexMatrix:
    """Complex Ginibre matrix with entry variance 1/n, spectrum filling the unit disk."""
    _check_dims(n, n)
    rng = make_rng(seed)
    entries = _unit_entries(rng, (n, n), Field.COMPLEX, Distribution.GAUSSIAN) / np.sqrt(n)
    return SquareComplexMatrix(entries=entries)


def sample_signal_plus_noise(
    n: int,
    N: int,
    spec: SignalSpec,
    sigma: float = 1.0,
    seed: int = 0,
    field: Field | str = Field.COMPLEX,
    distribution: Distribution | str = Distribution.GAUSSIAN,
) -> DataMatrix:
    """
    Y = S + X with X drawn exactly as ``sample_gaussian_matrix`` draws it for the same
    seed, and S = sum_k sqrt(p_k) h_k g_k^T from an independent stream of that seed.
    """
    _check_dims(n, N)
    if spec.rank > n:
        raise DimensionError(f"signal rank {spec.rank} exceeds n={n}")
    field = Field(field)
    noise = sample_gaussian_matrix(n, N, sigma, field, seed, distribution)

    h = spec.direction_matrix(n)
    if spec.scaling is Scaling.PER_SENSOR:
        h = h * np.sqrt(n)
    rng = make_rng(derive_seed(seed, 0, Stream.SIGNAL))
    g = _unit_entries(rng, (spec.rank, N), field, Distribution.GAUSSIAN)
    amplitudes = np.sqrt(np.asarray(spec.powers))

    signal = (h * amplitudes[None, :]) @ g
    if spec.mean_vector is not None:
        m = np.asarray(spec.mean_vector)
        if m.shape != (n,):
            raise DimensionError(f"mean vector must have length {n}, got shape {m.shape}")
        signal = signal + m[:, None]

    return DataMatrix(
        entries=noise.entries + signal,
        sigma=noise.sigma,
        field=field,
        hypothesis=Hypothesis.H1,
        seed=seed,
    )


def main():
    noise = sample_gaussian_matrix(200, 400, sigma=1.0, seed=7)
    spiked = sample_signal_plus_noise(200, 400, SignalSpec(powers=[10.0]), sigma=1.0, seed=7)
    print("noise:", noise.entries.shape, "c =", noise.c)
    print("pooled noise variance:", np.mean(np.abs(noise.entries) ** 2))
    print("pooled H1 variance:", np.mean(np.abs(spiked.entries) ** 2))


if __name__ == "__main__":
    main()
