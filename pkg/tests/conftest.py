import numpy as np
import pytest

from specshift import weights as W


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_weight_list(rng, n, lo=0.1, hi=2.0, complex_phase=False):
    mags = rng.uniform(lo, hi, n)
    if complex_phase:
        phases = np.exp(1j * rng.uniform(0, 2 * np.pi, n))
        return W.explicit(mags * phases)
    return W.explicit(mags)
