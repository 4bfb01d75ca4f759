import json

import pytest

from rmtscope.cli.config import (
    DEFAULT_OUTPUT_DIR,
    ExperimentConfig,
    load_config,
    merge_overrides,
    read_config_file,
    validate_config,
)
from rmtscope.ensembles import NoiseEnsemble, ProductEnsemble
from rmtscope.errors import ConfigError

ESD = {"command": "esd", "ensemble": {"kind": "noise", "n": 50, "N": 100}}


def test_minimal_config_defaults(monkeypatch):
    monkeypatch.delenv("RMTSCOPE_OUTPUT_DIR", raising=False)
    cfg = validate_config(ESD)
    assert isinstance(cfg.ensemble, NoiseEnsemble)
    assert cfg.trials == 1
    assert cfg.master_seed == 0
    assert cfg.bins == "auto"
    assert cfg.plot is True
    assert cfg.output_dir == DEFAULT_OUTPUT_DIR


def test_output_dir_from_environment(monkeypatch):
    monkeypatch.setenv("RMTSCOPE_OUTPUT_DIR", "/tmp/rmt-results")
    assert validate_config(ESD).output_dir == "/tmp/rmt-results"


@pytest.mark.parametrize(
    "patch",
    [
        {"colour": "blue"},
        {"ensemble": {"kind": "noise", "n": 50, "N": 100, "rho": 1.0}},
        {"ensemble": {"kind": "erm", "N": 10, "rho": 1.0}},
        {"bins": 0},
        {"master_seed": -1},
        {"master_seed": 2**64},
        {"trials": 0},
        {"command": "spectrogram"},
    ],
)
def test_invalid_configs_rejected(patch):
    with pytest.raises(ConfigError):
        validate_config({**ESD, **patch})


def test_roc_needs_alternative_and_detector():
    base = {"command": "roc", "ensemble": {"kind": "noise", "n": 4, "N": 4}}
    with pytest.raises(ConfigError, match="detector"):
        validate_config(base)
    with pytest.raises(ConfigError, match="alternative"):
        validate_config({**base, "detector": {"kind": "trace"}})
    cfg = validate_config(
        {**base, "detector": {"kind": "trace"}, "alternative": {"kind": "signal", "n": 4, "N": 4, "powers": [1.0]}}
    )
    assert cfg.alternative.powers == [1.0]


def test_product_ensemble_for_ringlaw():
    cfg = validate_config({"command": "ringlaw", "ensemble": {"kind": "product", "n": 10, "N": 20, "L": 2}})
    assert isinstance(cfg.ensemble, ProductEnsemble)


def test_channel_needs_exactly_one_description():
    with pytest.raises(ConfigError):
        validate_config({"command": "fbl", "channel": {"snr": 1.0, "capacity": 0.5, "dispersion": 1.0}})
    with pytest.raises(ConfigError):
        validate_config({"command": "fbl", "channel": {"capacity": 0.5}})
    cfg = validate_config({"command": "fbl", "channel": {"capacity": 0.5, "dispersion": 1.0}})
    assert cfg.channel.channel().capacity == 0.5


def test_resolved_config_round_trips():
    cfg = validate_config({**ESD, "workers": 4, "output_dir": "somewhere", "master_seed": 9})
    resolved = cfg.resolved()
    assert "workers" not in resolved and "output_dir" not in resolved
    assert validate_config(resolved).resolved() == resolved


def test_manifest_is_accepted_as_config(write_config):
    manifest = {"rmtscope_version": "0.1.0", "command": "esd", "config": ESD, "artifacts": []}
    assert read_config_file(write_config(manifest)) == ESD


def test_bad_files(tmp_path, write_config):
    with pytest.raises(ConfigError, match="not found"):
        read_config_file(tmp_path / "missing.json")
    broken = tmp_path / "broken.json"
    broken.write_text("{ not json")
    with pytest.raises(ConfigError):
        read_config_file(broken)
    with pytest.raises(ConfigError):
        read_config_file(write_config([1, 2, 3]))


def test_overrides_merge_nested_values(write_config):
    path = write_config(ESD)
    cfg = load_config(path, {"ensemble": {"n": 20}, "trials": 3})
    assert (cfg.ensemble.n, cfg.ensemble.N, cfg.trials) == (20, 100, 3)
    assert merge_overrides({"a": {"b": 1, "c": 2}}, {"a": {"c": 3}}) == {"a": {"b": 1, "c": 3}}


def test_config_is_frozen():
    cfg = validate_config(ESD)
    with pytest.raises(Exception):
        cfg.trials = 5
    assert json.loads(json.dumps(cfg.resolved()))["command"] == "esd"
    assert isinstance(cfg, ExperimentConfig)


def test_esd_needs_positive_sigma():
    with pytest.raises(ConfigError, match="sigma > 0"):
        validate_config({"command": "esd", "ensemble": {"kind": "noise", "n": 5, "N": 5, "sigma": 0.0}})
    cfg = validate_config({"command": "aggregation", "ensemble": {"kind": "noise", "n": 5, "N": 5, "sigma": 0.0}})
    assert cfg.ensemble.sigma == 0.0
