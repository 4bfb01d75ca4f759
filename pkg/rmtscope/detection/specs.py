"""
Declarative detector descriptions, evaluated on whatever an ensemble spec draws.
"""

from typing import Annotated, List, Literal, Union

from pydantic import BaseModel, ConfigDict, Field, NonNegativeFloat

from rmtscope.detection.detectors import (
    DetectorResult,
    energy_detector,
    estimate_sigma,
    mp_outlier_detector,
    ring_inner_detector,
    trace_detector,
)
from rmtscope.ensembles.covariance import sample_covariance
from rmtscope.ensembles.types import DataMatrix
from rmtscope.errors import ConfigError
from rmtscope.spectra.eigen import eig_hermitian
from rmtscope.spectra.products import standardized_product
from rmtscope.spectra.types import MpLaw, RingLaw

Sample = Union[DataMatrix, List[DataMatrix]]


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    def statistic(self, sample: Sample, seed: int) -> float:
        return self.evaluate(sample, seed).statistic


def _single(sample: Sample) -> DataMatrix:
    if isinstance(sample, DataMatrix):
        return sample
    if len(sample) != 1:
        raise ConfigError(f"detector takes one data matrix, got {len(sample)} factors")
    return sample[0]


class TraceDetectorSpec(_Strict):
    kind: Literal["trace"] = "trace"
    sigma: NonNegativeFloat = 1.0
    sigma_mode: Literal["known", "estimated"] = "known"
    threshold: float = 0.0

    def evaluate(self, sample: Sample, seed: int = 0) -> DetectorResult:
        X = _single(sample)
        sigma = estimate_sigma(X) if self.sigma_mode == "estimated" else self.sigma
        return trace_detector(X, sigma, self.threshold)


class EnergyDetectorSpec(_Strict):
    kind: Literal["energy"] = "energy"
    threshold: float = 1.0

    def evaluate(self, sample: Sample, seed: int = 0) -> DetectorResult:
        return energy_detector(_single(sample), self.threshold)


class MpOutlierDetectorSpec(_Strict):
    kind: Literal["mp_outlier"] = "mp_outlier"
    sigma: float = Field(default=1.0, gt=0)
    margin: NonNegativeFloat = 0.05

    def evaluate(self, sample: Sample, seed: int = 0) -> DetectorResult:
        X = _single(sample)
        spec = eig_hermitian(sample_covariance(X), c=X.c)
        return mp_outlier_detector(spec, MpLaw(c=X.c, sigma2=self.sigma**2), self.margin)


class RingInnerDetectorSpec(_Strict):
    kind: Literal["ring_inner"] = "ring_inner"
    margin: float = Field(default=0.1, ge=0, le=1)

    def evaluate(self, sample: Sample, seed: int = 0) -> DetectorResult:
        factors = [sample] if isinstance(sample, DataMatrix) else list(sample)
        spec = standardized_product(factors, seed)
        return ring_inner_detector(spec, RingLaw(c=spec.c, L=len(factors)), self.margin)


DetectorSpec = Annotated[
    Union[TraceDetectorSpec, EnergyDetectorSpec, MpOutlierDetectorSpec, RingInnerDetectorSpec],
    Field(discriminator="kind"),
]
