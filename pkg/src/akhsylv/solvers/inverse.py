"""Method 2: series for the inverse of the Sylvester operator Y ↦ YA − BY.

The operator's spectrum is σ(A) − σ(B), so a 1/x series on a domain holding
those differences gives X = Σ α_k P_k with P_k = p_k(operator)·C. One code
path serves any orthonormal table; with the Chebyshev table it is the
classical single-interval recurrence.
"""

from __future__ import annotations

import numpy as np

from akhsylv.config import SolverConfig
from akhsylv.core.cutdomain import CutDomain, Interval
from akhsylv.solvers.base import (
    BaseSylvesterSolver,
    LowRankPair,
    Solution,
    SylvesterProblem,
)
from akhsylv.solvers.compression import truncate
from akhsylv.solvers.data import (
    AkhiezerData,
    inverse_data,
    inverse_domain_rho,
    operator_interval,
)
from akhsylv.solvers.report import ConvergenceReport
from akhsylv.solvers.sign import Observer, entries, weighted_tolerance
from akhsylv.solvers.stopping import (
    check_divergence,
    error_constant,
    plan_iterations,
    predicted_bound,
)
from akhsylv.utils.logger import get_logger

__all__ = ["solve_inverse_dense", "solve_inverse_lowrank", "InverseSolver"]

logger = get_logger(__name__)


def _inverse_plan(
    problem: SylvesterProblem,
    data: AkhiezerData,
    config: SolverConfig,
    nu: float | None,
) -> tuple[np.ndarray, ConvergenceReport, float]:
    k = plan_iterations("inverse", data.rho, problem.n, problem.m, config)
    if k > data.table.count:
        raise IndexError(f"table holds {data.table.count} pairs, the series needs {k}")
    report = ConvergenceReport("inverse", data.rho, k, nu=nu)
    constant = error_constant("inverse", problem.n, problem.m)
    return data.coeffs.take(k), report, constant


def _finish(report: ConvergenceReport) -> None:
    logger.info(
        "Solve finished",
        extra={
            "method": report.method,
            "iterations": report.iterations,
            "rho": report.rho,
            "elapsed_ms": report.elapsed_ms,
        },
    )


def solve_inverse_dense(
    problem: SylvesterProblem,
    data: AkhiezerData,
    config: SolverConfig,
    *,
    nu: float | None = None,
    observer: Observer | None = None,
) -> tuple[np.ndarray, ConvergenceReport]:
    """Dense Method 2.

    P_0 = C and P_{k+1} = (P_k A − B P_k − a_k P_k − b_{k−1} P_{k−1}) / b_k;
    X accumulates α_k P_k.
    """
    alpha, report, constant = _inverse_plan(problem, data, config, nu)
    A, B = problem.A, problem.B
    a, b = data.table.a, data.table.b
    P_prev, P = None, np.array(problem.rhs(), dtype=np.float64)
    X = np.zeros_like(P)
    for j in range(alpha.size):
        X += alpha[j] * P
        report.add(predicted_bound(constant, report.rho, j + 1), entries(X, P, P_prev))
        if observer is not None:
            observer(j + 1, X)
        if j + 1 == alpha.size:
            break
        P_next = P @ A - B @ P - a[j] * P
        if P_prev is not None:
            P_next -= b[j - 1] * P_prev
        P_prev, P = P, P_next / b[j]
    _finish(report)
    return X, report


def solve_inverse_lowrank(
    problem: SylvesterProblem,
    data: AkhiezerData,
    config: SolverConfig,
    *,
    nu: float | None = None,
    observer: Observer | None = None,
) -> tuple[LowRankPair, ConvergenceReport]:
    """Low-rank Method 2 with P_k = J_k @ K_k.

    J_{k+1} = [J_k, −B J_k, −a_k J_k, −b_{k−1} J_{k−1}] / b_k and
    K_{k+1} = [K_k A; K_k; K_k; K_{k−1}]. J_k K_k is recompressed with the
    weighted tolerance ε_rank·ρ^k/c; W, Z gain the block α_k J_k, K_k.
    """
    if not problem.is_low_rank:
        raise ValueError("low-rank solves need a factored right-hand side")
    alpha, report, constant = _inverse_plan(problem, data, config, nu)
    A, B = problem.A, problem.B
    a, b = data.table.a, data.table.b
    m, n = problem.m, problem.n
    eps = config.rank_tolerance
    W, Z = np.zeros((m, 0)), np.zeros((0, n))
    J_prev = K_prev = None
    J = np.asarray(problem.U, dtype=np.float64)
    K = np.asarray(problem.V, dtype=np.float64)
    for j in range(alpha.size):
        jk = truncate(J, K, weighted_tolerance(config, report.rho, j))
        J, K = jk.W, jk.Z
        W_new = np.hstack([W, alpha[j] * J])
        Z_new = np.vstack([Z, K])
        peak = entries(J, K, J_prev, K_prev, W_new, Z_new)
        wz = truncate(W_new, Z_new, eps)
        W, Z = wz.W, wz.Z
        rank_jk = J.shape[1]
        if j + 1 < alpha.size:
            J_blocks = [J, -(B @ J), -a[j] * J]
            K_blocks = [K @ A, K, K]
            if J_prev is not None:
                J_blocks.append(-b[j - 1] * J_prev)
                K_blocks.append(K_prev)
            J_next = np.hstack(J_blocks) / b[j]
            K_next = np.vstack(K_blocks)
            peak = max(peak, entries(J, K, J_prev, K_prev, W, Z, J_next, K_next))
            J_prev, K_prev, J, K = J, K, J_next, K_next
        report.add(
            predicted_bound(constant, report.rho, j + 1),
            peak,
            rank_jk=rank_jk,
            rank_wz=W.shape[1],
        )
        if observer is not None:
            observer(j + 1, LowRankPair(W, Z))
    _finish(report)
    return LowRankPair(W, Z), report


class InverseSolver(BaseSylvesterSolver):
    """Method 2 on the operator interval or an explicit operator domain.

    Args:
    ----
        config: Solver settings.
        operator_domain: Domain holding σ(A) − σ(B). Defaults to the single
            interval [A.lo − B.hi, A.hi − B.lo] built from the hints; a
            two-interval :class:`CutDomain` switches to Akhiezer data.

    """

    method = "inverse"

    def __init__(
        self,
        config: SolverConfig | None = None,
        operator_domain: Interval | CutDomain | None = None,
    ) -> None:
        """Store the settings and the optional operator domain."""
        super().__init__(config)
        self.operator_domain = operator_domain

    def resolve_domain(self, problem: SylvesterProblem) -> Interval | CutDomain:
        if self.operator_domain is not None:
            return self.operator_domain
        return operator_interval(*problem.require_domains())

    def solve(
        self, problem: SylvesterProblem, *, observer: Observer | None = None
    ) -> tuple[Solution, ConvergenceReport]:
        domain = self.resolve_domain(problem)
        rho = inverse_domain_rho(domain)
        k = plan_iterations("inverse", rho, problem.n, problem.m, self.config)
        data = inverse_data(domain, k)
        nu = None
        if problem.eigs_A is not None and problem.eigs_B is not None:
            differences = np.subtract.outer(
                np.ravel(problem.eigs_A), np.ravel(problem.eigs_B)
            )
            nu = check_divergence(data.domain, np.unique(differences), data.z_ref)
        if problem.is_low_rank:
            return solve_inverse_lowrank(
                problem, data, self.config, nu=nu, observer=observer
            )
        return solve_inverse_dense(
            problem, data, self.config, nu=nu, observer=observer
        )
