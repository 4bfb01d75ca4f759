"""
Oracle suite: every check compares a simulated quantity with a value derived
from the closed-form laws. All randomness hangs off one master seed and the harness, so
the resulting table is identical for any worker count.
"""

import functools
import logging
import math
from typing import List

import numpy as np
import pandas as pd
from scipy import integrate, optimize, stats

from rmtscope.detection import MonteCarloHarness, MpOutlierDetectorSpec, TraceDetectorSpec
from rmtscope.ensembles import (
    ErmEnsemble,
    NoiseEnsemble,
    ProductEnsemble,
    SignalEnsemble,
    build_erm,
    sample_covariance,
    sample_point_cloud,
)
from rmtscope.fbl import awgn_channel, normal_approx_rate, q_inverse
from rmtscope.seeding import Stream, derive_seed
from rmtscope.spectra import (
    MpLaw,
    RingLaw,
    eig_general,
    eig_hermitian,
    ginibre_product_radial_cdf,
    ginibre_product_spectrum,
    ks_2d,
    ks_against_cdf,
    mp_cdf,
    ring_law_radii,
    standardized_product,
)

logger = logging.getLogger(__name__)

RELATIONS: dict = {
    "<=": lambda value, bound: value <= bound,
    ">=": lambda value, bound: value >= bound,
}


class CheckTable:
    def __init__(self):
        self.rows: List[dict] = []

    def add(self, check: str, value: float, relation: str, bound: float):
        passed = bool(RELATIONS[relation](value, bound))
        level = logging.INFO if passed else logging.WARNING
        logger.log(level, "%-28s %.6g %s %.6g  %s", check, value, relation, bound, "ok" if passed else "FAILED")
        self.rows.append(
            {"check": check, "value": float(value), "relation": relation, "bound": float(bound), "passed": passed}
        )

    def frame(self) -> pd.DataFrame:
        return pd.DataFrame(self.rows, columns=["check", "value", "relation", "bound", "passed"])


def _seed(master: int, index: int) -> int:
    return derive_seed(master, index, Stream.H0)


# ----------------------------------------------------------------
# Checks
# ----------------------------------------------------------------
def check_mp_fit(table: CheckTable, master: int, harness: MonteCarloHarness):
    X = NoiseEnsemble(n=1000, N=1000, sigma=1.0).draw(_seed(master, 0))
    spec = eig_hermitian(sample_covariance(X), c=X.c)
    law = MpLaw(c=X.c)
    table.add("mp_ks", ks_against_cdf(spec.real, lambda x: mp_cdf(x, law)), "<=", 0.05)


def check_spike_detachment(table: CheckTable, master: int, harness: MonteCarloHarness):
    detector = MpOutlierDetectorSpec(sigma=1.0, margin=0.05)
    noise = NoiseEnsemble(n=200, N=200)
    signal = SignalEnsemble(n=200, N=200, powers=[10.0])
    trials = 40

    hits = harness.statistics(detector, signal, trials, master, Stream.H1)
    false_alarms = harness.statistics(detector, noise, trials, master, Stream.H0)
    table.add("spike_detected_fraction", float(np.mean(hits > 0)), ">=", 0.95)
    table.add("spike_false_fraction", float(np.mean(false_alarms > 0)), "<=", 0.05)


def check_trace_statistic(table: CheckTable, master: int, harness: MonteCarloHarness):
    """Mean and variance of Z at n = N = 1000, then the 1/(nN) scaling against n = N = 500."""
    detector = TraceDetectorSpec(sigma=1.0)
    trials = 10_000
    variances = {}
    for n in (500, 1000):
        ensemble = NoiseEnsemble(n=n, N=n, field="real")
        z = harness.statistics(detector, ensemble, trials, derive_seed(master, n, Stream.H0), Stream.H0)
        variances[n] = float(z.var(ddof=1))
        if n == 1000:
            standard_error = math.sqrt(variances[n] / trials)
            table.add("trace_mean_zscore", abs(float(z.mean())) / standard_error, "<=", 3.0)
            ratio = variances[n] / (2.0 / (n * n))
            table.add("trace_var_factor", max(ratio, 1.0 / ratio), "<=", 2.0)

    shrink = (variances[500] / variances[1000]) / 4.0
    table.add("trace_var_scaling_factor", max(shrink, 1.0 / shrink), "<=", 1.5)


def check_ring_law(table: CheckTable, master: int, harness: MonteCarloHarness):
    for L in (1, 2):
        ensemble = ProductEnsemble(n=500, N=1000, L=L)
        seed = _seed(master, 10 + L)
        spec = standardized_product(ensemble.draw(seed), seed)
        inner, outer = ring_law_radii(RingLaw(c=spec.c, L=L))
        inside = (spec.moduli >= inner - 0.1) & (spec.moduli <= outer + 0.1)
        table.add(f"ring_annulus_fraction_L{L}", float(inside.mean()), ">=", 0.95)

    # paired draws: same seed with and without a 0 dB per-sensor spread signal
    noise = ProductEnsemble(n=200, N=400, L=1)
    signal = ProductEnsemble(n=200, N=400, L=1, powers=[1.0])
    pairs = 10
    shrunk = 0
    for trial in range(pairs):
        seed = derive_seed(master, trial, Stream.SIGNAL)
        quiet = standardized_product(noise.draw(seed), seed)
        loud = standardized_product(signal.draw(seed), seed)
        shrunk += int(np.percentile(loud.moduli, 1) < np.percentile(quiet.moduli, 1))
    table.add("ring_signal_inner_shrink_fraction", shrunk / pairs, ">=", 0.9)


def check_ginibre_products(table: CheckTable, master: int, harness: MonteCarloHarness):
    for k in (1, 2, 3):
        spec = ginibre_product_spectrum(k, 500, _seed(master, 20 + k))
        cdf = functools.partial(ginibre_product_radial_cdf, k=k)
        table.add(f"ginibre_ks_k{k}", ks_against_cdf(spec.moduli, cdf), "<=", 0.06)


def check_erm(table: CheckTable, master: int, harness: MonteCarloHarness):
    clouds = {}
    for index, density in enumerate((0.01, 1.0)):
        ensemble = ErmEnsemble(N=500, rho=density, lambda0=1.0)
        cloud = sample_point_cloud(ensemble.N, ensemble.rho, ensemble.lambda0, derive_seed(master, index, Stream.POINTS))
        A = build_erm(cloud).entries
        table.add(f"erm_symmetry_rho{density:g}", float(np.abs(A - A.T).max()), "<=", 0.0)
        table.add(f"erm_diagonal_rho{density:g}", float(np.abs(np.diag(A)).max()), "<=", 0.0)
        clouds[density] = (cloud, eig_general(build_erm(cloud)))

    table.add("erm_density_ks2d", ks_2d(clouds[0.01][1].eigenvalues, clouds[1.0][1].eigenvalues), ">=", 0.2)

    static = eig_general(build_erm(clouds[1.0][0], static=True))
    table.add("erm_static_imag_ratio", float(np.abs(static.imag).max()) / static.radius, "<=", 1e-9)


def check_detection_gain(table: CheckTable, master: int, harness: MonteCarloHarness):
    """P_d at calibrated P_fa = 0.1 grows with n at a fixed per-sensor SNR."""
    detector = TraceDetectorSpec(sigma=1.0)
    sizes = (25, 100, 400)
    replications = 5
    trials = 400
    increasing = 0
    for rep in range(replications):
        seed = derive_seed(master, rep, Stream.SIGNAL)
        pds = []
        for n in sizes:
            noise = NoiseEnsemble(n=n, N=n)
            signal = SignalEnsemble(n=n, N=n, powers=[0.008], directions="spread", scaling="per_sensor")
            calibration = harness.calibrate(detector, noise, 0.1, trials, seed)
            pds.append(harness.detection_probability(detector, signal, calibration.threshold, trials, seed))
        increasing += int(all(a < b for a, b in zip(pds, pds[1:])))
    table.add("detection_gain_fraction", increasing / replications, ">=", 0.95)


def _tail_integral_quantile(eps: float) -> float:
    """Q^{-1} by root finding on the integral of the normal density."""

    def tail(x: float) -> float:
        value, _ = integrate.quad(stats.norm.pdf, x, np.inf, epsabs=1e-14)
        return value - eps

    return optimize.brentq(tail, -10.0, 10.0, xtol=1e-12)


def check_fbl(table: CheckTable, master: int, harness: MonteCarloHarness):
    ch = awgn_channel(1.0)
    grid = [10**e for e in range(2, 7)]
    table.add(
        "fbl_median_error_gap",
        max(abs(normal_approx_rate(ch, 0.5, n) - ch.capacity) for n in grid),
        "<=",
        0.0,
    )
    products = np.array([n * (ch.capacity - normal_approx_rate(ch, 1e-3, n)) ** 2 for n in grid])
    table.add("fbl_dispersion_spread", float(np.ptp(products) / products.mean()), "<=", 1e-9)
    table.add("q_inverse_0.1_error", abs(q_inverse(0.1) - _tail_integral_quantile(0.1)), "<=", 1e-4)


CHECKS = (
    check_mp_fit,
    check_spike_detachment,
    check_trace_statistic,
    check_ring_law,
    check_ginibre_products,
    check_erm,
    check_detection_gain,
    check_fbl,
)


def run_checks(master_seed: int, harness: MonteCarloHarness) -> pd.DataFrame:
    table = CheckTable()
    for check in CHECKS:
        logger.info("Running %s...", check.__name__)
        check(table, master_seed, harness)
    return table.frame()
