"""Tests for the inverse-operator Sylvester solver."""

import numpy as np
import pytest

from akhsylv.config import SolverConfig
from akhsylv.core.cutdomain import CutDomain, Interval
from akhsylv.exceptions import NonConvergenceError, SingularDomainError
from akhsylv.services.oracles import known_problem
from akhsylv.solvers.base import LowRankPair, SylvesterProblem
from akhsylv.solvers.data import inverse_data, operator_interval
from akhsylv.solvers.inverse import (
    InverseSolver,
    solve_inverse_dense,
    solve_inverse_lowrank,
)
from akhsylv.solvers.stopping import error_constant


def test_operator_interval(interval_a, interval_b):
    """σ(A) − σ(B) ⊂ [A.lo − B.hi, A.hi − B.lo]."""
    assert operator_interval(interval_a, interval_b) == Interval(lo=2.5, hi=4.8)


class TestInverseSolver:
    """Method 2 on the operator interval."""

    def test_dense_solution(self, dense_problem, solver_config):
        """Dense solves reach the oracle solution."""
        X, report = InverseSolver(solver_config).solve(dense_problem.problem)
        gap = np.linalg.norm(X - dense_problem.solution)
        assert gap / np.linalg.norm(dense_problem.solution) < 1e-9
        assert report.method == "inverse"

    def test_lowrank_solution(self, lowrank_problem, solver_config):
        """Factored right-hand sides return factors of X."""
        X, report = InverseSolver(solver_config).solve(lowrank_problem.problem)
        assert isinstance(X, LowRankPair)
        gap = np.linalg.norm(X.dense() - lowrank_problem.solution)
        assert gap / np.linalg.norm(lowrank_problem.solution) < 1e-9
        assert all(r.rank_jk is not None for r in report.records)

    def test_error_below_predicted_bound(self, dense_problem):
        """Frobenius error stays below 20(n+m)ρ^{−k}/(1−1/ρ) until saturation."""
        errors = []
        config = SolverConfig(max_iterations=40)
        _, report = InverseSolver(config).solve(
            dense_problem.problem,
            observer=lambda _j, X: errors.append(
                np.linalg.norm(X - dense_problem.solution)
            ),
        )
        problem = dense_problem.problem
        rho = report.rho
        first = error_constant("inverse", problem.n, problem.m) / rho / (1 - 1 / rho)
        assert report.records[0].bound == pytest.approx(first)
        for error, record in zip(errors, report.records, strict=True):
            if error <= 1e-11:
                break
            assert error <= record.bound

    def test_zero_in_operator_interval(self, dense_problem, solver_config):
        """Overlapping spectra put 0 in the operator interval."""
        problem = dense_problem.problem
        touching = SylvesterProblem(
            A=problem.A,
            B=problem.B,
            C=problem.C,
            domain_A=Interval(lo=0.0, hi=1.0),
            domain_B=Interval(lo=0.5, hi=2.0),
        )
        with pytest.raises(SingularDomainError):
            InverseSolver(solver_config).solve(touching)

    def test_shared_eigenvalue_diverges(self, dense_problem, solver_config):
        """A zero eigenvalue difference gives ν = 0."""
        problem = dense_problem.problem
        hinted = SylvesterProblem(
            A=problem.A,
            B=problem.B,
            C=problem.C,
            domain_A=problem.domain_A,
            domain_B=problem.domain_B,
            eigs_A=np.array([2.5]),
            eigs_B=np.array([2.5]),
        )
        with pytest.raises(NonConvergenceError):
            InverseSolver(solver_config).solve(hinted)

    def test_two_interval_operator_domain(self, solver_config):
        """A split σ(A) − σ(B) is solved with Akhiezer data on two intervals."""
        eigs_A = np.concatenate([np.linspace(1.0, 1.3, 5), np.linspace(3.0, 3.4, 5)])
        eigs_B = np.linspace(-0.3, 0.0, 8)
        known = known_problem(
            10,
            8,
            Interval(lo=1.0, hi=3.4),
            Interval(lo=-0.3, hi=0.0),
            seed=9,
            low_rank=False,
            eigs_A=eigs_A,
            eigs_B=eigs_B,
            attach_eigs=True,
        )
        domain = CutDomain.of((1.0, 1.6), (3.0, 3.7))
        X, report = InverseSolver(solver_config, operator_domain=domain).solve(
            known.problem
        )
        gap = np.linalg.norm(X - known.solution) / np.linalg.norm(known.solution)
        assert gap < 1e-9
        assert report.nu is not None and report.nu < 0.0


def test_lowrank_engine_needs_factors(dense_problem, solver_config):
    """The factored engine refuses a dense right-hand side."""
    problem = dense_problem.problem
    data = inverse_data(operator_interval(problem.domain_A, problem.domain_B), 10)
    with pytest.raises(ValueError):
        solve_inverse_lowrank(problem, data, solver_config)


@pytest.mark.slow
def test_benchmark_size_accuracy(interval_a, interval_b, solver_config):
    """n = m = 200 rank-2 problem: final error at most 1e-10."""
    known = known_problem(200, 200, interval_a, interval_b, seed=1234)
    X, _ = InverseSolver(solver_config).solve(known.problem)
    assert np.linalg.norm(X.dense() - known.solution) <= 1e-10


def test_dense_engine_matches_lowrank(lowrank_problem, solver_config):
    """The dense engine reproduces the factored one on a fixed term count."""
    problem = lowrank_problem.problem
    data = inverse_data(operator_interval(problem.domain_A, problem.domain_B), 30)
    config = solver_config.model_copy(update={"max_iterations": 30})
    X_dense, report = solve_inverse_dense(problem, data, config)
    X_factored, _ = solve_inverse_lowrank(problem, data, config)
    gap = np.linalg.norm(X_factored.dense() - X_dense) / np.linalg.norm(X_dense)
    assert gap < 1e-9
    assert report.records[-1].rank_jk is None
