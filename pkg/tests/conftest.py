import numpy as np
import pytest

from eprsep.families import FamilySpec, sample_params


@pytest.fixture(scope="session")
def negative_d_pool():
    """500 seeded valid parameter sets with d < 0 (and hence c > 0)."""
    rng = np.random.default_rng(20240501)
    return [sample_params(FamilySpec(negative_d=True), rng) for _ in range(500)]


@pytest.fixture(scope="session")
def mixed_pool():
    """1000 seeded sets with mixed d signs, several hundred entangled."""
    rng = np.random.default_rng(20240502)
    generic = [sample_params(FamilySpec(), rng) for _ in range(500)]
    biased = [sample_params(FamilySpec(bias_entangled=True), rng) for _ in range(500)]
    return generic + biased
