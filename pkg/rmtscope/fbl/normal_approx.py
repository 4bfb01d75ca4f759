"""
Finite-blocklength normal approximation

    R(eps, n) = C - sqrt(V / n) Q^{-1}(eps)

with capacity C and dispersion V in bits per channel use. The O(log n / n)
remainder is not modelled.
"""

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
import pandas as pd
from scipy import stats

from rmtscope.errors import ConfigError

LOG2E = math.log2(math.e)


@dataclass(frozen=True)
class FblChannel:
    capacity: float
    dispersion: float

    def __post_init__(self):
        if not (math.isfinite(self.capacity) and self.capacity >= 0):
            raise ConfigError(f"capacity must be finite and >= 0, got {self.capacity}")
        if not (math.isfinite(self.dispersion) and self.dispersion >= 0):
            raise ConfigError(f"dispersion must be finite and >= 0, got {self.dispersion}")


def q_function(x: float) -> float:
    """Upper tail of the standard normal, Q(x) = P(Z > x)."""
    return float(stats.norm.sf(x))


def q_inverse(eps: float) -> float:
    if not 0.0 < eps < 1.0:
        raise ConfigError(f"error probability must be in (0, 1), got {eps}")
    return float(stats.norm.isf(eps))


def _check_blocklength(n: int) -> None:
    if n < 1:
        raise ConfigError(f"blocklength must be >= 1, got {n}")


def normal_approx_rate(ch: FblChannel, eps: float, n: int) -> float:
    """Maximal rate in bits per channel use; negative values for tiny n are returned as-is."""
    _check_blocklength(n)
    return ch.capacity - math.sqrt(ch.dispersion / n) * q_inverse(eps)


def blocklength_for_rate(ch: FblChannel, eps: float, target_rate: float) -> int:
    """
    Smallest n with normal_approx_rate(ch, eps, n) >= target_rate. Starts from the
    closed-form inversion ceil(V (Q^{-1}(eps) / (C - target))^2) and settles it by
    direct search against the rate itself.
    """
    if target_rate < 0:
        raise ConfigError(f"target rate must be >= 0, got {target_rate}")
    q = q_inverse(eps)

    if q <= 0.0 or ch.dispersion == 0.0:
        # the rate never falls below its n = 1 value
        if normal_approx_rate(ch, eps, 1) >= target_rate:
            return 1
        raise ConfigError(
            f"target rate {target_rate} exceeds every achievable rate "
            f"(C = {ch.capacity}, eps = {eps})"
        )

    gap = ch.capacity - target_rate
    if gap <= 0.0:
        raise ConfigError(
            f"target rate {target_rate} >= capacity {ch.capacity} is unreachable for eps < 0.5"
        )

    n = max(1, math.ceil(ch.dispersion * (q / gap) ** 2))
    while n > 1 and normal_approx_rate(ch, eps, n - 1) >= target_rate:
        n -= 1
    while normal_approx_rate(ch, eps, n) < target_rate:
        n += 1
    return n


def awgn_channel(snr: float) -> FblChannel:
    """Real AWGN channel: C = log2(1 + snr) / 2, V = snr (snr + 2) / (2 (snr + 1)^2) log2(e)^2."""
    if not snr >= 0:
        raise ConfigError(f"snr must be >= 0, got {snr}")
    capacity = 0.5 * math.log2(1.0 + snr)
    dispersion = snr * (snr + 2.0) / (2.0 * (snr + 1.0) ** 2) * LOG2E**2
    return FblChannel(capacity=capacity, dispersion=dispersion)


def log_blocklength_grid(n_min: int = 10, n_max: int = 10**6, points: int = 61) -> np.ndarray:
    _check_blocklength(n_min)
    if n_max < n_min:
        raise ConfigError(f"n_max ({n_max}) must be >= n_min ({n_min})")
    grid = np.geomspace(n_min, n_max, num=points)
    return np.unique(np.round(grid).astype(np.int64))


def rate_table(ch: FblChannel, eps: float, n_grid: Sequence[int]) -> pd.DataFrame:
    rates = [normal_approx_rate(ch, eps, int(n)) for n in n_grid]
    return pd.DataFrame({"n": np.asarray(n_grid, dtype=np.int64), "rate": rates})


def main():
    ch = awgn_channel(snr=1.0)
    print(f"AWGN snr=1: C = {ch.capacity:.4f} bits, V = {ch.dispersion:.4f} bits^2")
    table = rate_table(ch, eps=1e-3, n_grid=log_blocklength_grid(100, 10**5, 7))
    print(table)
    print("n for 90% of capacity:", blocklength_for_rate(ch, 1e-3, 0.9 * ch.capacity))


if __name__ == "__main__":
    main()
