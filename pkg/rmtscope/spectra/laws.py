"""
Closed-form reference laws: Marchenko-Pastur, the ring law and the radial law of
products of Ginibre matrices.
"""

import numpy as np
from scipy import integrate, optimize

from rmtscope.errors import ConfigError
from rmtscope.spectra.types import MpLaw, RingLaw

QUAD_EPSABS = 1e-12
QUAD_EPSREL = 1e-10


# ----------------------------------------------------------------
# Marchenko-Pastur
# ----------------------------------------------------------------
def mp_support(law: MpLaw) -> tuple[float, float]:
    root = np.sqrt(law.c)
    return law.sigma2 * (1.0 - root) ** 2, law.sigma2 * (1.0 + root) ** 2


def mp_atom(law: MpLaw) -> float:
    """Point mass at zero, present when c > 1 (rank-deficient sample covariance)."""
    return max(0.0, 1.0 - 1.0 / law.c)


def mp_density(x, law: MpLaw):
    """
    Density of the continuous part, sqrt((b - x)(x - a)) / (2 pi sigma2 c x) on [a, b].
    The atom at zero for c > 1 is not included (see ``mp_atom``).
    """
    values = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(values)):
        raise ConfigError("mp_density needs finite arguments")
    a, b = mp_support(law)
    inside = (values >= a) & (values <= b) & (values > 0)
    safe = np.where(inside, values, 1.0)
    density = np.where(
        inside,
        np.sqrt(np.clip((b - safe) * (safe - a), 0.0, None)) / (2.0 * np.pi * law.sigma2 * law.c * safe),
        0.0,
    )
    return float(density) if density.ndim == 0 else density


def _angle(x: np.ndarray, a: float, b: float) -> np.ndarray:
    u = np.clip((x - a) / (b - a), 0.0, 1.0)
    return np.arcsin(np.sqrt(u))


def _angular_integrand(law: MpLaw, a: float, b: float):
    # x = a + (b - a) sin^2 t removes the square-root edges, and at a = 0 also the 1/x pole
    width = b - a

    def integrand(t: float) -> float:
        s2 = np.sin(t) ** 2
        c2 = np.cos(t) ** 2
        x = a + width * s2
        return width**2 * s2 * c2 / (np.pi * law.sigma2 * law.c * x)

    return integrand


def mp_continuous_mass(law: MpLaw, lo: float, hi: float) -> float:
    """Integral of ``mp_density`` over [lo, hi]."""
    a, b = mp_support(law)
    t_lo, t_hi = _angle(np.array([lo, hi]), a, b)
    if t_hi <= t_lo:
        return 0.0
    value, _ = integrate.quad(
        _angular_integrand(law, a, b), t_lo, t_hi, epsabs=QUAD_EPSABS, epsrel=QUAD_EPSREL
    )
    return float(value)


def mp_cdf(x, law: MpLaw):
    """Cumulative distribution function including the atom at zero."""
    values = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(values)):
        raise ConfigError("mp_cdf needs finite arguments")
    a, b = mp_support(law)
    flat = values.ravel()
    order = np.argsort(flat)
    angles = _angle(flat[order], a, b)
    integrand = _angular_integrand(law, a, b)

    cdf_sorted = np.empty_like(angles)
    running, previous = 0.0, 0.0
    for i, t in enumerate(angles):
        if t > previous:
            piece, _ = integrate.quad(
                integrand, previous, t, epsabs=QUAD_EPSABS, epsrel=QUAD_EPSREL
            )
            running += piece
            previous = t
        cdf_sorted[i] = running

    cdf = np.empty_like(cdf_sorted)
    cdf[order] = cdf_sorted
    cdf = cdf + np.where(flat >= 0.0, mp_atom(law), 0.0)
    cdf = np.clip(np.where(flat >= b, 1.0, cdf), 0.0, 1.0)
    cdf = cdf.reshape(values.shape)
    return float(cdf) if cdf.ndim == 0 else cdf


def mp_quantile(q: float, law: MpLaw) -> float:
    if not 0.0 < q < 1.0:
        raise ConfigError(f"quantile level must be in (0, 1), got {q}")
    if q <= mp_atom(law):
        return 0.0
    a, b = mp_support(law)
    return float(optimize.brentq(lambda x: mp_cdf(x, law) - q, a, b, xtol=1e-12))


# ----------------------------------------------------------------
# Ring law and Ginibre products
# ----------------------------------------------------------------
def ring_law_radii(law: RingLaw) -> tuple[float, float]:
    return (1.0 - law.c) ** (law.L / 2.0), 1.0


def ring_law_radial_cdf(r, law: RingLaw):
    """
    Fraction of eigenvalues with modulus <= r for the product of L standardized
    factors: ((r^(2/L) - (1 - c)) / c) clipped to [0, 1].
    """
    r = np.clip(np.asarray(r, dtype=float), 0.0, None)
    cdf = np.clip((r ** (2.0 / law.L) - (1.0 - law.c)) / law.c, 0.0, 1.0)
    return float(cdf) if cdf.ndim == 0 else cdf


def ginibre_product_radial_cdf(r, k: int):
    """F(r) = r^(2/k) on [0, 1] for the product of k Ginibre matrices."""
    if k < 1:
        raise ConfigError(f"need k >= 1 factors, got {k}")
    r = np.clip(np.asarray(r, dtype=float), 0.0, 1.0)
    cdf = r ** (2.0 / k)
    return float(cdf) if cdf.ndim == 0 else cdf


def ginibre_product_quantile(q: float, k: int) -> float:
    return float(q ** (k / 2.0))
