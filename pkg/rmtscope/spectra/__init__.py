from .types import Histogram, MpLaw, RingLaw, Spectrum, SpectrumKind
from .eigen import eig_general, eig_hermitian
from .laws import (
    ginibre_product_quantile,
    ginibre_product_radial_cdf,
    mp_atom,
    mp_cdf,
    mp_continuous_mass,
    mp_density,
    mp_quantile,
    mp_support,
    ring_law_radial_cdf,
    ring_law_radii,
)
from .histogram import esd_histogram, freedman_diaconis_bins, mp_bin_density
from .products import (
    ginibre_product_spectrum,
    haar_unitary,
    singular_value_equivalent,
    standardized_product,
)
from .compare import ks_2d, ks_against_cdf
