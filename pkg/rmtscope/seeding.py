"""
Seed derivation for reproducible Monte Carlo runs.

Every random draw in rmtscope comes from a ``numpy.random.Generator`` built from an
unsigned 64-bit seed. Per-trial seeds are derived from (master_seed, trial_index, stream)
with a SplitMix64 mix, so a trial's data never depends on which worker ran it or in
which order.
"""

from enum import IntEnum

import numpy as np

from rmtscope.errors import ConfigError

MASK64 = (1 << 64) - 1


class Stream(IntEnum):
    """Independent random streams hanging off one master seed."""

    H0 = 0
    H1 = 1
    CALIBRATION = 2
    SIGNAL = 3
    HAAR = 4
    FACTOR = 5
    POINTS = 6


def splitmix64(x: int) -> int:
    z = (x + 0x9E3779B97F4A7C15) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def check_seed(seed: int) -> int:
    seed = int(seed)
    if not 0 <= seed <= MASK64:
        raise ConfigError(f"seed must be an unsigned 64-bit integer, got {seed}")
    return seed


def derive_seed(master_seed: int, trial_index: int, stream: int = 0) -> int:
    """
    Mixes (master_seed, trial_index, stream) into a new 64-bit seed.
    Distinct triples give statistically independent seeds.
    """
    h = splitmix64(check_seed(master_seed))
    h = splitmix64(h ^ (int(trial_index) & MASK64))
    h = splitmix64(h ^ (int(stream) & MASK64))
    return h


def make_rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(np.random.PCG64(check_seed(seed)))
