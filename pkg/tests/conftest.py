"""Shared fixtures: the worked example and a reproducible random family."""

import numpy as np
import pytest

from bscd import cd_kernel, measure
from bscd.poly import BivariateLaurentPoly, DegreePair

# p = 3 - z - w, the polynomial every hand-derived value in the suite uses
WORKED = BivariateLaurentPoly({(0, 0): 3, (1, 0): -1, (0, 1): -1})
WORKED_DEG = DegreePair(1, 1)

RANDOM_DEGREES = [(1, 1), (2, 1), (1, 2), (2, 2), (3, 3)]
RANDOM_SEED = 20260811


def window_for(deg: DegreePair) -> tuple[int, int]:
    n, m = deg
    return (3 * n + 8, 2 * m + 8)


def make_random_family(seed: int = RANDOM_SEED):
    rng = np.random.default_rng(seed)
    return [measure.random_stable_poly(n, m, rng) for (n, m) in RANDOM_DEGREES]


@pytest.fixture(scope="session")
def worked_moments():
    return measure.moments_from_grid(WORKED, (10, 8))


@pytest.fixture(scope="session")
def worked_kernelset():
    return cd_kernel.cd_kernel_set(WORKED, WORKED_DEG)


@pytest.fixture(scope="session")
def random_family():
    return make_random_family()


@pytest.fixture(scope="session")
def random_family_with_moments(random_family):
    return [
        (p, deg, measure.moments_from_grid(p, window_for(deg)))
        for (p, deg) in random_family
    ]


@pytest.fixture(scope="session")
def random_kernelsets(random_family):
    return [cd_kernel.cd_kernel_set(p, deg) for (p, deg) in random_family]
