import numpy as np
import pytest

from models.data_models import TAU_IMAG_RANGE, TAU_REAL_BOUND

SEED = 20240101


def random_tau(rng: np.random.Generator) -> complex:
    return complex(rng.uniform(-TAU_REAL_BOUND, TAU_REAL_BOUND), rng.uniform(*TAU_IMAG_RANGE))


def random_z(rng: np.random.Generator, bound: float = 0.4, floor: float = 0.05) -> complex:
    """A point of the disc |z| <= bound kept at least floor away from zero."""
    while True:
        z = complex(rng.uniform(-bound, bound), rng.uniform(-bound, bound))
        if floor <= abs(z) <= bound:
            return z


@pytest.fixture
def rng():
    return np.random.default_rng(SEED)


@pytest.fixture
def tau_samples(rng):
    return [random_tau(rng) for _ in range(50)]


@pytest.fixture
def z_tau_samples(rng):
    return [(random_z(rng), random_tau(rng)) for _ in range(50)]
