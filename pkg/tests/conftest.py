"""Shared fixtures: seeded Sylvester problems and spectral intervals."""

import pytest

from akhsylv.config import SolverConfig
from akhsylv.core.cutdomain import CutDomain, Interval
from akhsylv.services.oracles import known_problem

INTERVAL_A = Interval(lo=2.0, hi=3.0)
INTERVAL_B = Interval(lo=-1.8, hi=-0.5)


@pytest.fixture
def solver_config():
    """Default solver settings."""
    return SolverConfig()


@pytest.fixture
def interval_a():
    """Spectral interval of A in the benchmark problems."""
    return INTERVAL_A


@pytest.fixture
def interval_b():
    """Spectral interval of B in the benchmark problems."""
    return INTERVAL_B


@pytest.fixture
def sign_domain_sigma():
    """Σ = [−1.8, −0.5] ∪ [2, 3]."""
    return CutDomain.of((-1.8, -0.5), (2.0, 3.0))


@pytest.fixture
def symmetric_domain():
    """Σ = [−1, −0.5] ∪ [0.5, 1], the β = 0.5 symmetric domain."""
    return CutDomain.of((-1.0, -0.5), (0.5, 1.0))


@pytest.fixture
def dense_problem():
    """Small dense problem with σ(A) ⊂ [2, 3], σ(B) ⊂ [−1.8, −0.5]."""
    return known_problem(16, 12, INTERVAL_A, INTERVAL_B, seed=7, low_rank=False)


@pytest.fixture
def lowrank_problem():
    """Small rank-2 problem with the same spectra as ``dense_problem``."""
    return known_problem(16, 12, INTERVAL_A, INTERVAL_B, seed=7)
