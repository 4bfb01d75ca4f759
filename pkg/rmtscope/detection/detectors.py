"""
Detectors for the matrix-valued hypothesis test

    H0: Y = X        H1: Y = S + X

Every detector reduces its input to a real statistic and claims H1 when the
statistic is strictly above the threshold (ties go to H0).
"""

import logging
from dataclasses import dataclass

import numpy as np

from rmtscope.ensembles.covariance import sample_covariance
from rmtscope.ensembles.types import DataMatrix, Hypothesis
from rmtscope.errors import ConfigError, DimensionError
from rmtscope.spectra.eigen import eig_hermitian
from rmtscope.spectra.laws import mp_atom, mp_quantile, mp_support, ring_law_radii
from rmtscope.spectra.types import MpLaw, RingLaw, Spectrum, SpectrumKind

logger = logging.getLogger(__name__)

ASPECT_RTOL = 1e-9


@dataclass(frozen=True)
class DetectorResult:
    statistic: float
    verdict: Hypothesis
    threshold: float

    def __post_init__(self):
        expected = Hypothesis.H1 if self.statistic > self.threshold else Hypothesis.H0
        if self.verdict is not expected:
            raise ConfigError(
                f"verdict {self.verdict.value} contradicts statistic {self.statistic} "
                f"against threshold {self.threshold}"
            )

    @classmethod
    def decide(cls, statistic: float, threshold: float) -> "DetectorResult":
        verdict = Hypothesis.H1 if statistic > threshold else Hypothesis.H0
        return cls(statistic=float(statistic), verdict=verdict, threshold=float(threshold))


def _check_aspect(spec: Spectrum, c: float) -> None:
    if spec.c is not None and abs(spec.c - c) > ASPECT_RTOL * max(abs(c), 1.0):
        raise DimensionError(f"spectrum has aspect ratio {spec.c}, law expects {c}")


# ----------------------------------------------------------------
# Trace and energy detectors
# ----------------------------------------------------------------
def trace_statistic(X: DataMatrix, sigma: float) -> float:
    """
    Z = (1/n) Tr(hollow_wishart(X, sigma)), computed through Tr(X X^H) = ||X||_F^2
    so the n x n covariance is never formed.
    """
    energy = float(np.real(np.vdot(X.entries, X.entries)))
    return energy / (X.n * X.N) - sigma**2


def trace_detector(X: DataMatrix, sigma: float, threshold: float = 0.0) -> DetectorResult:
    if sigma < 0:
        raise ConfigError(f"sigma must be >= 0, got {sigma}")
    return DetectorResult.decide(trace_statistic(X, sigma), threshold)


def energy_detector(X: DataMatrix, threshold: float) -> DetectorResult:
    """
    Classical energy detector, statistic (1/nN) ||X||_F^2. This is the baseline the
    harness compares against in place of an estimator-correlator test.
    """
    energy = float(np.real(np.vdot(X.entries, X.entries)))
    return DetectorResult.decide(energy / (X.n * X.N), threshold)


def estimate_sigma(X: DataMatrix) -> float:
    """
    Plug-in noise level: the median of the nonzero sample-covariance eigenvalues
    matched to the median of the continuous MP part at the same aspect ratio.
    """
    law = MpLaw(c=X.c, sigma2=1.0)
    eigenvalues = eig_hermitian(sample_covariance(X)).real
    nonzero = np.sort(eigenvalues)[X.n - min(X.n, X.N):]
    atom = mp_atom(law)
    reference = mp_quantile(atom + 0.5 * (1.0 - atom), law)
    return float(np.sqrt(max(np.median(nonzero), 0.0) / reference))


# ----------------------------------------------------------------
# Spectral detectors
# ----------------------------------------------------------------
def mp_outlier_detector(spec: Spectrum, law: MpLaw, margin: float = 0.05) -> DetectorResult:
    """Fraction of eigenvalues above the MP upper edge b (1 + margin); H1 iff any."""
    if spec.kind is not SpectrumKind.HERMITIAN:
        raise DimensionError("mp_outlier_detector needs a hermitian spectrum")
    if margin < 0:
        raise ConfigError(f"margin must be >= 0, got {margin}")
    _check_aspect(spec, law.c)
    _, upper = mp_support(law)
    fraction = float(np.mean(spec.real > upper * (1.0 + margin)))
    return DetectorResult.decide(fraction, 0.0)


def ring_inner_detector(spec: Spectrum, law: RingLaw, margin: float = 0.1) -> DetectorResult:
    """Fraction of eigenvalues inside the ring's inner radius times (1 - margin); H1 iff any."""
    if not 0 < law.c < 1:
        raise ConfigError(f"ring_inner_detector needs c in (0, 1), got {law.c}")
    if not 0 <= margin <= 1:
        raise ConfigError(f"margin must be in [0, 1], got {margin}")
    _check_aspect(spec, law.c)
    inner, _ = ring_law_radii(law)
    fraction = float(np.mean(spec.moduli < inner * (1.0 - margin)))
    return DetectorResult.decide(fraction, 0.0)
