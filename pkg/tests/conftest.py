"""Shared fixtures and random-instance generators."""

import numpy as np
import pytest

from extropy.distributions import JointPmf, Pmf

#: worked two-variable table used across the measure tests
EXAMPLE_TABLE = {(0, 0): 0.1, (0, 1): 0.2, (1, 0): 0.3, (1, 1): 0.4}


@pytest.fixture
def example_joint() -> JointPmf:
    return JointPmf.from_table(EXAMPLE_TABLE)


def random_pmf(rng: np.random.Generator, m: int) -> Pmf:
    """Strictly positive random pmf with m masses."""
    return Pmf(rng.dirichlet(np.ones(m)))


def random_pmf_capped(rng: np.random.Generator, m: int, cap: float) -> Pmf:
    """Random pmf whose largest mass is below cap."""
    while True:
        masses = rng.dirichlet(np.ones(m))
        if masses.max() < cap:
            return Pmf(masses)


def random_joint(rng: np.random.Generator, mx: int, my: int) -> JointPmf:
    """Dense random 2-axis joint with all cells positive."""
    flat = rng.dirichlet(np.ones(mx * my))
    table = {(i, j): flat[i * my + j] for i in range(mx) for j in range(my)}
    return JointPmf.from_table(table)


def random_product_joint(rng: np.random.Generator, mx: int, my: int) -> JointPmf:
    return JointPmf.product(random_pmf(rng, mx), random_pmf(rng, my))
