import numpy as np
import pytest

from biasness.optimizer import OptimizerConfig

@pytest.fixture
def rng():
    return np.random.default_rng(20170101)

@pytest.fixture
def fast_cfg():
    return OptimizerConfig(restarts=8, max_iterations=1500, seed=7)

@pytest.fixture
def bell():
    psi = np.zeros(4, dtype=np.complex128)
    psi[[0, 3]] = 1 / np.sqrt(2)
    return np.outer(psi, psi.conj())
