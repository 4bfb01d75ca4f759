import json

import numpy as np
import pytest

from rmtscope.cli.main import main


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def run_cli(tmp_path):
    """Runs the CLI in-process; returns (exit code, output directory)."""

    def _run(*argv, out="out"):
        out_dir = tmp_path / out
        code = main([*map(str, argv), "--output-dir", str(out_dir), "--quiet"])
        return code, out_dir

    return _run


@pytest.fixture
def write_config(tmp_path):
    def _write(data, name="config.json"):
        path = tmp_path / name
        path.write_text(json.dumps(data))
        return path

    return _write
