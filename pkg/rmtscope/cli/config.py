"""
Experiment configuration: one strict JSON document per run.

A config names the workflow (``command``), the ensemble to draw, optionally a detector
and an H1 ensemble, and the run controls. Everything is validated before any sampling
starts; unknown keys are rejected at every level.
"""

import json
import logging
import os
from pathlib import Path
from typing import Any, Dict, Literal, Optional, Union

from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    PositiveInt,
    ValidationError,
    field_validator,
    model_validator,
)

from rmtscope.detection.specs import DetectorSpec
from rmtscope.ensembles.specs import DataEnsemble, EnsembleSpec
from rmtscope.errors import ConfigError
from rmtscope.fbl import FblChannel, awgn_channel, log_blocklength_grid
from rmtscope.seeding import MASK64

logger = logging.getLogger(__name__)

OUTPUT_DIR_ENV = "RMTSCOPE_OUTPUT_DIR"
DEFAULT_OUTPUT_DIR = "rmtscope-out"

# Run controls that never influence the numbers; kept out of manifests.
RUNTIME_FIELDS = {"output_dir", "workers"}

Command = Literal[
    "esd",
    "aggregation",
    "ringlaw",
    "ginibre-product",
    "erm",
    "detect",
    "roc",
    "fbl",
    "selftest",
]

# command -> ensemble kinds it accepts
ENSEMBLE_KINDS: Dict[str, set] = {
    "esd": {"noise", "signal"},
    "aggregation": {"noise", "signal"},
    "ringlaw": {"product"},
    "ginibre-product": {"ginibre_product"},
    "erm": {"erm"},
    "detect": {"noise", "signal", "product"},
    "roc": {"noise", "signal", "product"},
}


def default_output_dir() -> str:
    return os.environ.get(OUTPUT_DIR_ENV, DEFAULT_OUTPUT_DIR)


class ChannelConfig(BaseModel):
    """Either an AWGN ``snr`` or a user supplied (capacity, dispersion) pair."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    snr: Optional[float] = Field(default=None, ge=0)
    capacity: Optional[float] = Field(default=None, ge=0)
    dispersion: Optional[float] = Field(default=None, ge=0)
    eps: float = Field(default=1e-3, gt=0, lt=1)
    n_min: PositiveInt = 10
    n_max: PositiveInt = 10**6
    points: PositiveInt = 61

    @model_validator(mode="after")
    def _one_channel(self):
        explicit = self.capacity is not None or self.dispersion is not None
        if self.snr is not None and explicit:
            raise ValueError("give either snr or (capacity, dispersion), not both")
        if self.snr is None and (self.capacity is None or self.dispersion is None):
            raise ValueError("channel needs snr or both capacity and dispersion")
        if self.n_max < self.n_min:
            raise ValueError(f"n_max ({self.n_max}) must be >= n_min ({self.n_min})")
        return self

    def channel(self) -> FblChannel:
        if self.snr is not None:
            return awgn_channel(self.snr)
        return FblChannel(capacity=self.capacity, dispersion=self.dispersion)

    def grid(self):
        return log_blocklength_grid(self.n_min, self.n_max, self.points)


class ExperimentConfig(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    command: Command
    ensemble: Optional[EnsembleSpec] = None
    alternative: Optional[DataEnsemble] = None
    detector: Optional[DetectorSpec] = None
    channel: Optional[ChannelConfig] = None
    trials: PositiveInt = 1
    master_seed: int = Field(default=0, ge=0, le=MASK64)
    output_dir: str = Field(default_factory=default_output_dir)
    bins: Union[Literal["auto"], PositiveInt] = "auto"
    plot: bool = True
    workers: PositiveInt = 1
    target_pfa: float = Field(default=0.1, gt=0, lt=1)

    @field_validator("output_dir")
    @classmethod
    def _non_empty(cls, value: str) -> str:
        if not value.strip():
            raise ValueError("output_dir must not be empty")
        return value

    @model_validator(mode="after")
    def _command_requirements(self):
        kinds = ENSEMBLE_KINDS.get(self.command)
        if kinds is not None:
            if self.ensemble is None:
                raise ValueError(f"command '{self.command}' needs an ensemble")
            if self.ensemble.kind not in kinds:
                raise ValueError(
                    f"command '{self.command}' takes ensemble kinds {sorted(kinds)}, "
                    f"got '{self.ensemble.kind}'"
                )
        if self.command == "esd" and self.ensemble.sigma == 0:
            raise ValueError("command 'esd' needs sigma > 0 for its Marchenko-Pastur reference")
        if self.command in ("detect", "roc") and self.detector is None:
            raise ValueError(f"command '{self.command}' needs a detector")
        if self.command == "roc" and self.alternative is None:
            raise ValueError("command 'roc' needs an alternative (H1) ensemble")
        if self.command == "fbl" and self.channel is None:
            raise ValueError("command 'fbl' needs a channel")
        return self

    def resolved(self) -> Dict[str, Any]:
        """The config as it ran, minus runtime-only controls; a valid input for ``run``."""
        return self.model_dump(mode="json", exclude=RUNTIME_FIELDS, exclude_none=True)


def _format_validation_error(err: ValidationError) -> str:
    first = err.errors()[0]
    location = ".".join(str(part) for part in first["loc"]) or "config"
    return f"{location}: {first['msg']}"


def validate_config(data: Dict[str, Any]) -> ExperimentConfig:
    try:
        return ExperimentConfig.model_validate(data)
    except ValidationError as err:
        raise ConfigError(_format_validation_error(err)) from err


def read_config_file(path: Union[str, Path]) -> Dict[str, Any]:
    """
    Reads a JSON config. A manifest written by an earlier run is accepted too: its
    ``config`` section is the resolved config of that run.
    """
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except FileNotFoundError as err:
        raise ConfigError(f"config file not found: {path}") from err
    except json.JSONDecodeError as err:
        raise ConfigError(f"{path} is not valid JSON ({err.msg} at line {err.lineno})") from err

    if not isinstance(data, dict):
        raise ConfigError(f"{path} must hold a JSON object")
    if "rmtscope_version" in data and "config" in data:
        logger.info("Reading config from manifest %s (rmtscope %s)", path, data["rmtscope_version"])
        data = data["config"]
    return data


def merge_overrides(base: Dict[str, Any], overrides: Dict[str, Any]) -> Dict[str, Any]:
    """Recursive merge; values in ``overrides`` win, nested dicts merge key by key."""
    merged = dict(base)
    for key, value in overrides.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = merge_overrides(merged[key], value)
        else:
            merged[key] = value
    return merged


def load_config(path: Optional[Union[str, Path]] = None, overrides: Optional[Dict[str, Any]] = None) -> ExperimentConfig:
    data = read_config_file(path) if path is not None else {}
    return validate_config(merge_overrides(data, overrides or {}))
