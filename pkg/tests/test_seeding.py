import numpy as np
import pytest

from rmtscope.errors import ConfigError
from rmtscope.seeding import MASK64, Stream, derive_seed, make_rng, splitmix64


def test_derive_seed_is_deterministic():
    assert derive_seed(7, 3, Stream.H1) == derive_seed(7, 3, Stream.H1)


def test_derive_seed_separates_trials_and_streams():
    seeds = {derive_seed(7, i, s) for i in range(200) for s in Stream}
    assert len(seeds) == 200 * len(Stream)
    assert all(0 <= s <= MASK64 for s in seeds)


def test_derive_seed_depends_on_master():
    assert derive_seed(1, 0) != derive_seed(2, 0)


def test_splitmix64_reference_value():
    # first output of SplitMix64 seeded with 0
    assert splitmix64(0) == 0xE220A8397B1DCDAF


@pytest.mark.parametrize("seed", [-1, MASK64 + 1])
def test_out_of_range_seed_rejected(seed):
    with pytest.raises(ConfigError):
        derive_seed(seed, 0)


def test_make_rng_reproducible():
    a = make_rng(123).standard_normal(5)
    b = make_rng(123).standard_normal(5)
    np.testing.assert_array_equal(a, b)
    assert not np.array_equal(a, make_rng(124).standard_normal(5))
