"""
rmtscope command line.

    rmtscope esd --ensemble noise --n 1000 --N 1000 --sigma 1 --seed 7
    rmtscope ringlaw --L 1 --c 0.5 --n 500 --seed 7
    rmtscope roc --detector trace --n 100 --N 100 --powers 0.01 --scaling per_sensor --trials 1000
    rmtscope run out/manifest.json --output-dir rerun

Every subcommand accepts ``--config FILE``; flags override the file. Exit status is 0 on
success, 2 for configuration errors and 3 for numerical failures, with one line on
stderr naming the cause.
"""

import argparse
import logging
import sys
from typing import Any, Dict, List, Optional

from rmtscope import __version__
from rmtscope.cli.config import ExperimentConfig, load_config, merge_overrides, read_config_file
from rmtscope.cli.workflows import WORKFLOWS
from rmtscope.detection import MonteCarloHarness
from rmtscope.errors import ConfigError, NumericalError, RmtscopeError

logger = logging.getLogger("rmtscope")

DEFAULT_ENSEMBLE = {
    "esd": "noise",
    "aggregation": "noise",
    "ringlaw": "product",
    "ginibre-product": "ginibre_product",
    "erm": "erm",
    "roc": "noise",
}
DEFAULT_DETECTOR = "trace"

ENSEMBLE_FLAGS = (
    "n", "N", "sigma", "field", "distribution", "powers", "directions", "scaling",
    "L", "k", "rho", "lambda0", "static",
)
SIGNAL_FLAGS = {"powers", "directions", "scaling"}
DETECTOR_FLAGS = ("threshold", "margin", "sigma_mode")
CHANNEL_FLAGS = ("snr", "capacity", "dispersion", "eps", "n_min", "n_max", "points")
SIGMA_DETECTORS = {"trace", "mp_outlier"}


def bins_type(value: str):
    if value == "auto":
        return value
    try:
        count = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bins must be a positive integer or 'auto', got {value!r}")
    if count < 1:
        raise argparse.ArgumentTypeError(f"bins must be >= 1, got {count}")
    return count


# ----------------------------------------------------------------
# Parser
# ----------------------------------------------------------------
def _common_parent() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    group = parent.add_argument_group("run controls")
    group.add_argument("--config", help="JSON experiment config (flags override it)")
    group.add_argument("--seed", type=int, dest="master_seed", help="master seed (unsigned 64-bit)")
    group.add_argument("--trials", type=int, help="Monte Carlo trials")
    group.add_argument("--output-dir", help="artifact directory (default $RMTSCOPE_OUTPUT_DIR or ./rmtscope-out)")
    group.add_argument("--bins", type=bins_type, help="histogram bins, integer or 'auto'")
    group.add_argument("--no-plot", action="store_true", help="skip SVG figures")
    group.add_argument("--workers", type=int, help="worker processes for Monte Carlo trials")
    group.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    group.add_argument("--quiet", action="store_true", help="warnings only, no progress bars")
    return parent


def _experiment_parent() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)

    ens = parent.add_argument_group("ensemble")
    ens.add_argument("--ensemble", choices=["noise", "signal", "product"], help="ensemble kind")
    ens.add_argument("--n", type=int, dest="n", help="dimension (sensors)")
    ens.add_argument("--N", type=int, dest="N", help="samples per sensor, or points for erm")
    ens.add_argument("--c", type=float, dest="c", help="aspect ratio n/N (sets N from --n)")
    ens.add_argument("--sigma", type=float, help="noise standard deviation")
    ens.add_argument("--field", choices=["real", "complex"])
    ens.add_argument("--distribution", choices=["gaussian", "rademacher"])
    ens.add_argument("--powers", type=float, nargs="+", help="signal powers p_1 ... p_k")
    ens.add_argument("--directions", choices=["canonical", "spread"])
    ens.add_argument("--scaling", choices=["total", "per_sensor"])
    ens.add_argument("--L", type=int, dest="L", help="factors in the ring-law product")
    ens.add_argument("--k", type=int, dest="k", help="factors in the Ginibre product")
    ens.add_argument("--rho", type=float, help="point density (points per cubic meter)")
    ens.add_argument("--lambda0", type=float, help="wavelength in meters")
    ens.add_argument("--static", action="store_true", default=None, help="zero wavenumber kernel 1/r")

    det = parent.add_argument_group("detector")
    det.add_argument("--detector", choices=["trace", "energy", "mp_outlier", "ring_inner"])
    det.add_argument("--threshold", type=float)
    det.add_argument("--margin", type=float)
    det.add_argument("--sigma-mode", choices=["known", "estimated"])
    det.add_argument("--target-pfa", type=float, help="false-alarm rate for threshold calibration")

    fbl = parent.add_argument_group("finite blocklength")
    fbl.add_argument("--snr", type=float, help="AWGN signal-to-noise ratio (linear)")
    fbl.add_argument("--capacity", type=float)
    fbl.add_argument("--dispersion", type=float)
    fbl.add_argument("--eps", type=float, help="block error probability")
    fbl.add_argument("--n-min", type=int)
    fbl.add_argument("--n-max", type=int)
    fbl.add_argument("--points", type=int)
    return parent


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rmtscope", description=__doc__.split("\n\n")[0].strip())
    parser.add_argument("--version", action="version", version=f"rmtscope {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    common = _common_parent()
    experiment = _experiment_parent()
    descriptions = {
        "esd": "sample covariance spectrum against the Marchenko-Pastur law",
        "aggregation": "hollow Wishart spectrum and normalized trace fluctuations",
        "ringlaw": "eigenvalues of standardized products against the ring law",
        "ginibre-product": "eigenvalues of products of Ginibre matrices",
        "erm": "point cloud, free-space kernel matrix and its eigenvalue cloud",
        "detect": "single-shot detector verdict",
        "roc": "Monte Carlo ROC curve and calibrated threshold",
        "fbl": "finite-blocklength normal approximation rate table",
        "selftest": "run the oracle checks",
    }
    for name, help_text in descriptions.items():
        sub.add_parser(name, parents=[common, experiment], help=help_text)

    run = sub.add_parser("run", parents=[common], help="execute a config or manifest file")
    run.add_argument("file", help="JSON config or manifest.json of an earlier run")
    return parser


# ----------------------------------------------------------------
# Flags -> config
# ----------------------------------------------------------------
def _given(args: argparse.Namespace, names) -> Dict[str, Any]:
    return {name: getattr(args, name) for name in names if getattr(args, name, None) is not None}


def _ensemble_overrides(command: str, args, base: Dict[str, Any]) -> Dict[str, Any]:
    fields = _given(args, ENSEMBLE_FLAGS)
    if args.c is not None:
        n = fields.get("n", (base.get("ensemble") or {}).get("n"))
        if n is None:
            raise ConfigError("--c needs --n to derive N")
        if not args.c > 0:
            raise ConfigError(f"--c must be > 0, got {args.c}")
        fields["N"] = max(1, round(n / args.c))

    base_kind = (base.get("ensemble") or {}).get("kind")
    kind = args.ensemble or base_kind or DEFAULT_ENSEMBLE.get(command)
    if command == "detect" and kind is None:
        kind = "signal" if "powers" in fields else "noise"
    if kind is None:
        return {}

    if kind != base_kind:
        base.pop("ensemble", None)

    if command != "roc":
        return {"ensemble": {"kind": kind, **fields}}

    null = {key: value for key, value in fields.items() if key not in SIGNAL_FLAGS}
    if args.ensemble == "signal":
        raise ConfigError("roc takes the noise-only ensemble; give H1 signal powers with --powers")
    alt_base_kind = (base.get("alternative") or {}).get("kind")
    alt_kind = alt_base_kind or ("product" if kind == "product" else "signal")
    return {"ensemble": {"kind": kind, **null}, "alternative": {"kind": alt_kind, **fields}}


def _detector_overrides(command: str, args, base: Dict[str, Any], merged_ensemble: Dict[str, Any]) -> Dict[str, Any]:
    if command not in ("detect", "roc"):
        return {}
    fields = _given(args, DETECTOR_FLAGS)
    base_detector = base.get("detector") or {}
    default = "ring_inner" if merged_ensemble.get("kind") == "product" else DEFAULT_DETECTOR
    kind = args.detector or base_detector.get("kind") or default
    if kind != base_detector.get("kind"):
        base.pop("detector", None)
        base_detector = {}
    if kind in SIGMA_DETECTORS and "sigma" not in base_detector and "sigma" in merged_ensemble:
        fields["sigma"] = merged_ensemble["sigma"]
    return {"detector": {"kind": kind, **fields}}


def _scalar_overrides(args) -> Dict[str, Any]:
    overrides = _given(args, ("master_seed", "trials", "output_dir", "bins", "workers", "target_pfa"))
    if args.no_plot:
        overrides["plot"] = False
    return overrides


def resolve_config(args: argparse.Namespace) -> ExperimentConfig:
    if args.command == "run":
        return load_config(args.file, _scalar_overrides(args))

    base = read_config_file(args.config) if args.config else {}
    if base.get("command", args.command) != args.command:
        raise ConfigError(f"config is for '{base['command']}', not '{args.command}'")

    overrides: Dict[str, Any] = {"command": args.command, **_scalar_overrides(args)}
    overrides.update(_ensemble_overrides(args.command, args, base))
    merged_ensemble = {**(base.get("ensemble") or {}), **overrides.get("ensemble", {})}
    overrides.update(_detector_overrides(args.command, args, base, merged_ensemble))
    channel = _given(args, CHANNEL_FLAGS)
    if channel:
        overrides["channel"] = channel

    return load_config(None, merge_overrides(base, overrides))


# ----------------------------------------------------------------
# Entry point
# ----------------------------------------------------------------
def configure_logging(verbose: bool, quiet: bool):
    level = logging.DEBUG if verbose else logging.WARNING if quiet else logging.INFO
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s", force=True)


def report(err: RmtscopeError, command: str):
    reason = " ".join(str(err).split())
    print(f"rmtscope: error={err.kind} command={command} reason={reason}", file=sys.stderr)


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose, args.quiet)
    command = args.command

    try:
        cfg = resolve_config(args)
        command = cfg.command
        harness = MonteCarloHarness(workers=cfg.workers, progress=not args.quiet)
        logger.info("Running %s (seed %d, %d trial(s))...", command, cfg.master_seed, cfg.trials)
        writer = WORKFLOWS[command](cfg, harness)
        writer.write(cfg.resolved(), __version__, cfg.master_seed)
        failed = writer.summary.get("failed")
        if failed:
            raise NumericalError(f"selftest checks failed: {', '.join(failed)}")
    except RmtscopeError as err:
        report(err, command)
        return err.exit_code
    return 0


if __name__ == "__main__":
    sys.exit(main())
