"""
Seeded Monte Carlo harness: H0/H1 statistic sampling, threshold calibration and ROC curves.

Trial i of a stream draws its data from derive_seed(master_seed, i, stream), so the
statistics come back identical for any worker count and any scheduling order.
"""

import logging
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np
import pandas as pd
from tqdm import tqdm

from rmtscope.errors import ConfigError, DegenerateStatisticWarning
from rmtscope.seeding import Stream, derive_seed

logger = logging.getLogger(__name__)

MIN_TRIALS = 100


def _trial_statistic(job) -> float:
    detector, ensemble, trial_seed = job
    return detector.statistic(ensemble.draw(trial_seed), trial_seed)


@dataclass(frozen=True)
class ThresholdCalibration:
    threshold: float
    target_pfa: float
    trials: int
    degenerate: bool
    statistics: np.ndarray

    def empirical_pfa(self) -> float:
        return float(np.mean(self.statistics > self.threshold))


@dataclass(frozen=True)
class RocCurve:
    """
    (P_fa, P_d) points ordered by decreasing threshold, closed by (0, 0) and (1, 1).
    ``thresholds[i]`` is the threshold that produced point i.
    """

    pfa: np.ndarray
    pd: np.ndarray
    thresholds: np.ndarray
    trials_h0: int
    trials_h1: int
    seed: int

    @classmethod
    def from_statistics(cls, h0: np.ndarray, h1: np.ndarray, seed: int) -> "RocCurve":
        h0 = np.sort(np.asarray(h0, dtype=float))
        h1 = np.sort(np.asarray(h1, dtype=float))
        pooled = np.unique(np.concatenate([h0, h1]))[::-1]
        thresholds = np.concatenate([[np.inf], pooled, [-np.inf]])

        # strict rule: a trial counts when its statistic is > threshold
        pfa = (h0.size - np.searchsorted(h0, thresholds, side="right")) / h0.size
        pd = (h1.size - np.searchsorted(h1, thresholds, side="right")) / h1.size
        pfa = np.maximum.accumulate(pfa)
        pd = np.maximum.accumulate(pd)
        return cls(
            pfa=pfa,
            pd=pd,
            thresholds=thresholds,
            trials_h0=int(h0.size),
            trials_h1=int(h1.size),
            seed=seed,
        )

    def auc(self) -> float:
        return float(np.trapezoid(self.pd, self.pfa))

    def pd_at(self, pfa: float) -> float:
        """Best detection probability among operating points with P_fa <= pfa."""
        return float(self.pd[self.pfa <= pfa].max(initial=0.0))

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({"pfa": self.pfa, "pd": self.pd})


class MonteCarloHarness:
    """
    Runs detector trials over declarative ensembles, optionally on a process pool.
    The worker count never changes the returned numbers.
    """

    def __init__(self, workers: int = 1, progress: bool = False):
        if workers < 1:
            raise ConfigError(f"workers must be >= 1, got {workers}")
        self.workers = workers
        self.progress = progress

    # ---------------------------------------------------------
    # Raw statistics
    # ---------------------------------------------------------
    def statistics(self, detector, ensemble, trials: int, seed: int, stream: int) -> np.ndarray:
        jobs = [(detector, ensemble, derive_seed(seed, i, stream)) for i in range(trials)]
        label = f"{detector.kind} / {ensemble.kind} / stream {int(stream)}"
        logger.info("Sampling %d trials (%s)...", trials, label)

        if self.workers == 1:
            results = [_trial_statistic(job) for job in tqdm(jobs, desc=label, disable=not self.progress)]
        else:
            chunksize = max(1, trials // (4 * self.workers))
            with ProcessPoolExecutor(max_workers=self.workers) as pool:
                mapped = pool.map(_trial_statistic, jobs, chunksize=chunksize)
                results = list(tqdm(mapped, total=trials, desc=label, disable=not self.progress))
        return np.asarray(results, dtype=float)

    # ---------------------------------------------------------
    # Calibration and ROC
    # ---------------------------------------------------------
    def calibrate(self, detector, h0, target_pfa: float, trials: int, seed: int) -> ThresholdCalibration:
        if not 0.0 < target_pfa < 1.0:
            raise ConfigError(f"target P_fa must be in (0, 1), got {target_pfa}")
        if trials < MIN_TRIALS:
            raise ConfigError(f"calibration needs >= {MIN_TRIALS} trials, got {trials}")

        stats = self.statistics(detector, h0, trials, seed, Stream.CALIBRATION)
        threshold = float(np.quantile(stats, 1.0 - target_pfa, method="higher"))
        degenerate = bool(np.ptp(stats) == 0.0)
        if degenerate:
            message = f"H0 statistic is constant ({stats[0]:g}); threshold {threshold:g} is degenerate"
            logger.warning(message)
            warnings.warn(message, DegenerateStatisticWarning, stacklevel=2)
        return ThresholdCalibration(
            threshold=threshold,
            target_pfa=target_pfa,
            trials=trials,
            degenerate=degenerate,
            statistics=stats,
        )

    def roc(self, detector, h0, h1, trials: int, seed: int) -> RocCurve:
        if trials < MIN_TRIALS:
            raise ConfigError(f"ROC needs >= {MIN_TRIALS} trials per hypothesis, got {trials}")
        stats_h0 = self.statistics(detector, h0, trials, seed, Stream.H0)
        stats_h1 = self.statistics(detector, h1, trials, seed, Stream.H1)
        return RocCurve.from_statistics(stats_h0, stats_h1, seed)

    def detection_probability(self, detector, h1, threshold: float, trials: int, seed: int) -> float:
        stats = self.statistics(detector, h1, trials, seed, Stream.H1)
        return float(np.mean(stats > threshold))


def calibrate_threshold(
    detector,
    h0_experiment,
    target_pfa: float,
    trials: int,
    seed: int,
    harness: Optional[MonteCarloHarness] = None,
) -> ThresholdCalibration:
    """Empirical (1 - target_pfa) quantile of the H0 statistic."""
    return (harness or MonteCarloHarness()).calibrate(detector, h0_experiment, target_pfa, trials, seed)


def monte_carlo_roc(
    detector,
    h0,
    h1,
    trials: int,
    seed: int,
    harness: Optional[MonteCarloHarness] = None,
) -> RocCurve:
    return (harness or MonteCarloHarness()).roc(detector, h0, h1, trials, seed)
