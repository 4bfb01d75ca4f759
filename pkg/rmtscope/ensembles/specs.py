"""
Declarative ensemble descriptions.

These pydantic models are what experiment configs and the Monte Carlo harness pass
around: a spec plus a seed fully determines the drawn data.
"""

from typing import Annotated, List, Literal, Union

from pydantic import BaseModel, ConfigDict, Field, NonNegativeFloat, PositiveFloat, PositiveInt

from rmtscope.ensembles.gaussian import sample_gaussian_matrix, sample_signal_plus_noise
from rmtscope.ensembles.types import DataMatrix, SignalSpec
from rmtscope.seeding import Stream, derive_seed


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class NoiseEnsemble(_Strict):
    kind: Literal["noise"] = "noise"
    n: PositiveInt
    N: PositiveInt
    sigma: NonNegativeFloat = 1.0
    field: Literal["real", "complex"] = "complex"
    distribution: Literal["gaussian", "rademacher"] = "gaussian"

    def draw(self, seed: int) -> DataMatrix:
        return sample_gaussian_matrix(
            self.n, self.N, self.sigma, self.field, seed, self.distribution
        )


class SignalEnsemble(_Strict):
    kind: Literal["signal"] = "signal"
    n: PositiveInt
    N: PositiveInt
    sigma: NonNegativeFloat = 1.0
    field: Literal["real", "complex"] = "complex"
    distribution: Literal["gaussian", "rademacher"] = "gaussian"
    powers: List[NonNegativeFloat] = Field(min_length=1)
    directions: Literal["canonical", "spread"] = "canonical"
    scaling: Literal["total", "per_sensor"] = "total"

    def signal_spec(self) -> SignalSpec:
        return SignalSpec(powers=self.powers, directions=self.directions, scaling=self.scaling)

    def draw(self, seed: int) -> DataMatrix:
        return sample_signal_plus_noise(
            self.n,
            self.N,
            self.signal_spec(),
            self.sigma,
            seed,
            self.field,
            self.distribution,
        )


class ProductEnsemble(_Strict):
    """L independent rectangular factors for the ring-law product; signal optional."""

    kind: Literal["product"] = "product"
    n: PositiveInt
    N: PositiveInt
    L: PositiveInt = 1
    sigma: NonNegativeFloat = 1.0
    field: Literal["real", "complex"] = "complex"
    powers: List[NonNegativeFloat] = Field(default_factory=list)
    directions: Literal["canonical", "spread"] = "spread"
    scaling: Literal["total", "per_sensor"] = "per_sensor"

    def factor(self) -> Union[NoiseEnsemble, SignalEnsemble]:
        common = dict(n=self.n, N=self.N, sigma=self.sigma, field=self.field)
        if not self.powers:
            return NoiseEnsemble(**common)
        return SignalEnsemble(
            **common, powers=self.powers, directions=self.directions, scaling=self.scaling
        )

    def draw(self, seed: int) -> List[DataMatrix]:
        factor = self.factor()
        return [factor.draw(derive_seed(seed, ell, Stream.FACTOR)) for ell in range(self.L)]


class GinibreProductEnsemble(_Strict):
    kind: Literal["ginibre_product"] = "ginibre_product"
    n: PositiveInt
    k: PositiveInt = 1


class ErmEnsemble(_Strict):
    kind: Literal["erm"] = "erm"
    N: int = Field(ge=2)
    rho: PositiveFloat
    lambda0: PositiveFloat = 1.0
    static: bool = False


DataEnsemble = Annotated[
    Union[NoiseEnsemble, SignalEnsemble, ProductEnsemble], Field(discriminator="kind")
]

EnsembleSpec = Annotated[
    Union[NoiseEnsemble, SignalEnsemble, ProductEnsemble, GinibreProductEnsemble, ErmEnsemble],
    Field(discriminator="kind"),
]
