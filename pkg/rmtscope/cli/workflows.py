"""
One function per subcommand. Each takes a validated ExperimentConfig and a harness and
returns an ArtifactWriter holding its tables, figures and summary values; nothing touches
the disk here.
"""

import logging
from typing import Callable, Dict, List

import numpy as np
import pandas as pd

from rmtscope.cli.config import ExperimentConfig
from rmtscope.cli.outputs import ArtifactWriter, new_figure
from rmtscope.detection import MonteCarloHarness, TraceDetectorSpec
from rmtscope.ensembles import (
    Field,
    build_erm,
    hollow_wishart,
    sample_covariance,
    sample_point_cloud,
)
from rmtscope.fbl import rate_table
from rmtscope.seeding import Stream, derive_seed
from rmtscope.spectra import (
    MpLaw,
    RingLaw,
    Spectrum,
    SpectrumKind,
    eig_general,
    eig_hermitian,
    esd_histogram,
    ginibre_product_radial_cdf,
    ginibre_product_spectrum,
    ks_against_cdf,
    mp_bin_density,
    mp_cdf,
    mp_support,
    ring_law_radial_cdf,
    ring_law_radii,
    standardized_product,
)

logger = logging.getLogger(__name__)

RING_TOLERANCE = 0.1


def trial_seeds(cfg: ExperimentConfig, stream: int = Stream.H0) -> List[int]:
    return [derive_seed(cfg.master_seed, i, stream) for i in range(cfg.trials)]


def pooled(spectra: List[Spectrum], kind: SpectrumKind) -> Spectrum:
    values = np.concatenate([s.eigenvalues for s in spectra])
    return Spectrum(eigenvalues=values, n=values.size, kind=kind, c=spectra[0].c)


def scatter_frame(spec: Spectrum) -> pd.DataFrame:
    return pd.DataFrame({"re": spec.real, "im": spec.imag})


def histogram_frame(hist) -> pd.DataFrame:
    return pd.DataFrame(
        {"bin_lo": hist.bin_edges[:-1], "bin_hi": hist.bin_edges[1:], "mass": hist.masses}
    )


def scatter_figure(spec: Spectrum, title: str, circles=()):
    fig, ax = new_figure(aspect_equal=True)
    ax.scatter(spec.real, spec.imag, s=2, color="tab:blue", linewidths=0)
    t = np.linspace(0.0, 2.0 * np.pi, 361)
    for radius in circles:
        ax.plot(radius * np.cos(t), radius * np.sin(t), color="tab:red", lw=0.8)
    ax.set_xlabel("Re λ")
    ax.set_ylabel("Im λ")
    ax.set_title(title)
    return fig


# ----------------------------------------------------------------
# Spectral workflows
# ----------------------------------------------------------------
def run_esd(cfg: ExperimentConfig, harness: MonteCarloHarness) -> ArtifactWriter:
    ensemble = cfg.ensemble
    logger.info("Sampling %d covariance spectra (%s, n=%d, N=%d)...", cfg.trials, ensemble.kind, ensemble.n, ensemble.N)
    spectra = []
    for seed in trial_seeds(cfg):
        X = ensemble.draw(seed)
        spectra.append(eig_hermitian(sample_covariance(X), c=X.c))
    spec = pooled(spectra, SpectrumKind.HERMITIAN)

    law = MpLaw(c=spec.c, sigma2=ensemble.sigma**2)
    hist = esd_histogram(spec, cfg.bins)
    table = histogram_frame(hist)
    table["mp_mass"] = mp_bin_density(hist.bin_edges, law)

    writer = ArtifactWriter(cfg.output_dir, cfg.command)
    writer.add_table("esd", table)
    lower, upper = mp_support(law)
    writer.note(
        ks_mp=ks_against_cdf(spec.real, lambda x: mp_cdf(x, law)),
        mp_lower=lower,
        mp_upper=upper,
        eigenvalues_above_edge=int(np.sum(spec.real > upper)),
    )

    if cfg.plot:
        fig, ax = new_figure()
        ax.stairs(hist.masses, hist.bin_edges, fill=True, color="tab:blue", alpha=0.5, label="ESD")
        ax.stairs(table["mp_mass"].to_numpy(), hist.bin_edges, color="tab:red", label="Marchenko-Pastur")
        ax.set_xlabel("eigenvalue")
        ax.set_ylabel("density")
        ax.legend()
        writer.add_figure("esd", fig)
    return writer


def run_aggregation(cfg: ExperimentConfig, harness: MonteCarloHarness) -> ArtifactWriter:
    """Hollow Wishart spectrum of one draw plus the normalized trace over all trials."""
    ensemble = cfg.ensemble
    seed0 = derive_seed(cfg.master_seed, 0, Stream.H0)
    X = ensemble.draw(seed0)
    spec = eig_hermitian(hollow_wishart(X, ensemble.sigma), c=X.c)
    hist = esd_histogram(spec, cfg.bins)

    # the trace statistic is exactly the normalized trace of the hollow Wishart matrix
    z = harness.statistics(TraceDetectorSpec(sigma=ensemble.sigma), ensemble, cfg.trials, cfg.master_seed, Stream.H0)
    per_entry = 1.0 if ensemble.field == Field.COMPLEX.value else 2.0
    predicted_var = per_entry * ensemble.sigma**4 / (ensemble.n * ensemble.N)

    writer = ArtifactWriter(cfg.output_dir, cfg.command)
    writer.add_table("hollow_wishart_esd", histogram_frame(hist))
    writer.add_table("trace", pd.DataFrame({"trial": np.arange(cfg.trials), "z": z}))
    writer.note(
        trace_mean=float(z.mean()),
        trace_var=float(z.var(ddof=1)) if z.size > 1 else 0.0,
        trace_var_predicted=predicted_var,
    )

    if cfg.plot:
        fig, ax = new_figure()
        ax.stairs(hist.masses, hist.bin_edges, fill=True, color="tab:blue", alpha=0.6)
        ax.set_xlabel("eigenvalue of hollow Wishart matrix")
        ax.set_ylabel("density")
        writer.add_figure("hollow_wishart_esd", fig)
    return writer


def run_ringlaw(cfg: ExperimentConfig, harness: MonteCarloHarness) -> ArtifactWriter:
    ensemble = cfg.ensemble
    logger.info("Sampling %d standardized products (L=%d, n=%d, N=%d)...", cfg.trials, ensemble.L, ensemble.n, ensemble.N)
    spec = pooled(
        [standardized_product(ensemble.draw(seed), seed) for seed in trial_seeds(cfg)],
        SpectrumKind.GENERAL,
    )
    law = RingLaw(c=spec.c, L=ensemble.L)
    inner, outer = ring_law_radii(law)
    moduli = spec.moduli
    in_annulus = (moduli >= inner - RING_TOLERANCE) & (moduli <= outer + RING_TOLERANCE)

    writer = ArtifactWriter(cfg.output_dir, cfg.command)
    writer.add_table("scatter", scatter_frame(spec))
    writer.note(
        inner_radius=inner,
        outer_radius=outer,
        fraction_in_annulus=float(in_annulus.mean()),
        ks_radial=ks_against_cdf(moduli, lambda r: ring_law_radial_cdf(r, law)),
    )
    if cfg.plot:
        title = f"L={ensemble.L}, c={law.c:g}"
        writer.add_figure("scatter", scatter_figure(spec, title, circles=(inner, outer)))
    return writer


def run_ginibre_product(cfg: ExperimentConfig, harness: MonteCarloHarness) -> ArtifactWriter:
    ensemble = cfg.ensemble
    spec = pooled(
        [ginibre_product_spectrum(ensemble.k, ensemble.n, seed) for seed in trial_seeds(cfg)],
        SpectrumKind.GENERAL,
    )
    writer = ArtifactWriter(cfg.output_dir, cfg.command)
    writer.add_table("scatter", scatter_frame(spec))
    writer.note(
        ks_radial=ks_against_cdf(spec.moduli, lambda r: ginibre_product_radial_cdf(r, ensemble.k)),
        spectral_radius=spec.radius,
    )
    if cfg.plot:
        writer.add_figure("scatter", scatter_figure(spec, f"k={ensemble.k}", circles=(1.0,)))
    return writer


def run_erm(cfg: ExperimentConfig, harness: MonteCarloHarness) -> ArtifactWriter:
    """Point cloud -> free-space kernel matrix -> eigenvalue cloud."""
    ensemble = cfg.ensemble
    cloud = sample_point_cloud(ensemble.N, ensemble.rho, ensemble.lambda0, derive_seed(cfg.master_seed, 0, Stream.POINTS))
    A = build_erm(cloud, static=ensemble.static)
    spec = eig_general(A)

    writer = ArtifactWriter(cfg.output_dir, cfg.command)
    writer.add_table("scatter", scatter_frame(spec))
    writer.add_table("points", pd.DataFrame(cloud.positions, columns=["x", "y", "z"]))
    writer.note(
        density_parameter=cloud.density_parameter,
        spectral_radius=spec.radius,
        max_abs_imag=float(np.abs(spec.imag).max()),
    )
    if cfg.plot:
        title = f"ρλ0³={cloud.density_parameter:g}" + (" (static)" if ensemble.static else "")
        fig, ax = new_figure()
        ax.scatter(spec.real, spec.imag, s=2, color="tab:blue", linewidths=0)
        ax.set_xlabel("Re λ")
        ax.set_ylabel("Im λ")
        ax.set_title(title)
        writer.add_figure("scatter", fig)
    return writer


# ----------------------------------------------------------------
# Detection workflows
# ----------------------------------------------------------------
def run_detect(cfg: ExperimentConfig, harness: MonteCarloHarness) -> ArtifactWriter:
    """Single-shot verdict on one draw of the configured ensemble."""
    sample = cfg.ensemble.draw(cfg.master_seed)
    result = cfg.detector.evaluate(sample, cfg.master_seed)
    logger.info("%s detector: statistic %.6g, verdict %s", cfg.detector.kind, result.statistic, result.verdict.value)

    writer = ArtifactWriter(cfg.output_dir, cfg.command)
    writer.add_table(
        "verdict",
        pd.DataFrame(
            {"statistic": [result.statistic], "threshold": [result.threshold], "verdict": [result.verdict.value]}
        ),
    )
    writer.note(statistic=result.statistic, threshold=result.threshold, verdict=result.verdict.value)
    return writer


def run_roc(cfg: ExperimentConfig, harness: MonteCarloHarness) -> ArtifactWriter:
    curve = harness.roc(cfg.detector, cfg.ensemble, cfg.alternative, cfg.trials, cfg.master_seed)
    calibration = harness.calibrate(cfg.detector, cfg.ensemble, cfg.target_pfa, cfg.trials, cfg.master_seed)
    pd_calibrated = harness.detection_probability(
        cfg.detector, cfg.alternative, calibration.threshold, cfg.trials, cfg.master_seed
    )

    writer = ArtifactWriter(cfg.output_dir, cfg.command)
    writer.add_table("roc", curve.to_frame())
    writer.note(
        auc=curve.auc(),
        target_pfa=cfg.target_pfa,
        threshold=calibration.threshold,
        degenerate=calibration.degenerate,
        pd_at_threshold=pd_calibrated,
    )
    if cfg.plot:
        fig, ax = new_figure()
        ax.plot(curve.pfa, curve.pd, color="tab:blue", drawstyle="steps-post", label=cfg.detector.kind)
        ax.plot([0, 1], [0, 1], color="grey", lw=0.8, ls="--")
        ax.set_xlabel("P_fa")
        ax.set_ylabel("P_d")
        ax.set_xlim(0, 1)
        ax.set_ylim(0, 1.02)
        ax.legend(loc="lower right")
        writer.add_figure("roc", fig)
    return writer


def run_fbl(cfg: ExperimentConfig, harness: MonteCarloHarness) -> ArtifactWriter:
    channel = cfg.channel.channel()
    table = rate_table(channel, cfg.channel.eps, cfg.channel.grid())

    writer = ArtifactWriter(cfg.output_dir, cfg.command)
    writer.add_table("fbl", table)
    writer.note(capacity=channel.capacity, dispersion=channel.dispersion, eps=cfg.channel.eps)
    if cfg.plot:
        fig, ax = new_figure()
        ax.semilogx(table["n"], table["rate"], color="tab:blue", label=f"ε={cfg.channel.eps:g}")
        ax.axhline(channel.capacity, color="tab:red", lw=0.8, ls="--", label="C")
        ax.set_xlabel("blocklength n")
        ax.set_ylabel("rate (bits / channel use)")
        ax.legend(loc="lower right")
        writer.add_figure("fbl", fig)
    return writer


def run_selftest(cfg: ExperimentConfig, harness: MonteCarloHarness) -> ArtifactWriter:
    from rmtscope.cli.selftest import run_checks

    writer = ArtifactWriter(cfg.output_dir, cfg.command)
    table = run_checks(cfg.master_seed, harness)
    writer.add_table("selftest", table)
    writer.note(checks=int(len(table)), failed=sorted(table.loc[~table["passed"], "check"]))
    return writer


WORKFLOWS: Dict[str, Callable[[ExperimentConfig, MonteCarloHarness], ArtifactWriter]] = {
    "esd": run_esd,
    "aggregation": run_aggregation,
    "ringlaw": run_ringlaw,
    "ginibre-product": run_ginibre_product,
    "erm": run_erm,
    "detect": run_detect,
    "roc": run_roc,
    "fbl": run_fbl,
    "selftest": run_selftest,
}
