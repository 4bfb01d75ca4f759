"""
Artifact emission: CSV tables, SVG figures and a JSON manifest.

Artifacts are collected in memory and only written once the workflow has finished, so a
failing run leaves nothing behind. Nothing time-dependent goes into any file: reruns of
the same config produce byte-identical outputs.
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional

import matplotlib as mpl

mpl.use("Agg")

import pandas as pd  # noqa: E402
from matplotlib.figure import Figure  # noqa: E402

logger = logging.getLogger(__name__)

MANIFEST_NAME = "manifest.json"
FLOAT_FORMAT = "%.12g"

svg_defaults = {
    "svg.hashsalt": "rmtscope",
    "svg.fonttype": "path",
    "font.size": 10,
    "axes.labelsize": 10,
    "legend.fontsize": 8,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "figure.figsize": (5.0, 3.6),
}


def new_figure(aspect_equal: bool = False):
    fig = Figure(figsize=svg_defaults["figure.figsize"])
    ax = fig.add_subplot(1, 1, 1)
    if aspect_equal:
        ax.set_aspect("equal")
    return fig, ax


class ArtifactWriter:
    def __init__(self, output_dir, command: str):
        self.output_dir = Path(output_dir)
        self.command = command
        self.tables: Dict[str, pd.DataFrame] = {}
        self.figures: Dict[str, Figure] = {}
        self.summary: Dict[str, Any] = {}

    # ---------------------------------------------------------
    # Collect
    # ---------------------------------------------------------
    def add_table(self, name: str, df: pd.DataFrame):
        self.tables[f"{name}.csv"] = df

    def add_figure(self, name: str, fig: Figure):
        self.figures[f"{name}.svg"] = fig

    def note(self, **values):
        """Scalar results recorded in the manifest (verdicts, thresholds, AUC...)."""
        self.summary.update(values)

    def artifact_names(self) -> List[str]:
        return sorted([*self.tables, *self.figures, MANIFEST_NAME])

    # ---------------------------------------------------------
    # Write
    # ---------------------------------------------------------
    def _save_table(self, name: str, df: pd.DataFrame) -> Path:
        path = self.output_dir / name
        df.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
        logger.info("Saved %s → %s", name, path)
        return path

    def _save_figure(self, name: str, fig: Figure) -> Path:
        path = self.output_dir / name
        with mpl.rc_context(svg_defaults):
            fig.savefig(path, format="svg", metadata={"Date": None})
        logger.info("Saved %s → %s", name, path)
        return path

    def manifest(self, resolved_config: Dict[str, Any], version: str, master_seed: int) -> Dict[str, Any]:
        return {
            "rmtscope_version": version,
            "command": self.command,
            "master_seed": master_seed,
            "config": resolved_config,
            "artifacts": self.artifact_names(),
            "summary": self.summary,
        }

    def write(
        self,
        resolved_config: Dict[str, Any],
        version: str,
        master_seed: int,
        output_dir: Optional[Path] = None,
    ) -> List[Path]:
        if output_dir is not None:
            self.output_dir = Path(output_dir)
        self.output_dir.mkdir(parents=True, exist_ok=True)

        paths = [self._save_table(name, df) for name, df in sorted(self.tables.items())]
        paths += [self._save_figure(name, fig) for name, fig in sorted(self.figures.items())]

        manifest_path = self.output_dir / MANIFEST_NAME
        manifest = self.manifest(resolved_config, version, master_seed)
        manifest_path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
        logger.info("Saved %s → %s", MANIFEST_NAME, manifest_path)
        paths.append(manifest_path)
        return paths
