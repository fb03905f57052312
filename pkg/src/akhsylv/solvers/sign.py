"""Method 1: Sylvester solves through the sign function of a block matrix.

For H = [[A, 0], [C, B]] with sign +1 on σ(A) and −1 on σ(B), the lower-left
block of sign(H) is 2X. The lower-left block of p_j(H) is C·p_j(A) + G_j,
where G_j follows a recurrence that never forms H. The dense and factored
series engines here are shared with the Fréchet derivative, which reuses the
same block structure with B = A.
"""

from __future__ import annotations

import math
from collections.abc import Callable

import numpy as np

from akhsylv.config import SolverConfig
from akhsylv.core.akhiezer import RecurrenceTable
from akhsylv.core.cutdomain import sign_rate
from akhsylv.solvers.base import (
    BaseSylvesterSolver,
    LowRankPair,
    Solution,
    SylvesterProblem,
)
from akhsylv.solvers.compression import truncate
from akhsylv.solvers.data import AkhiezerData, sign_data, sign_domain
from akhsylv.solvers.report import ConvergenceReport
from akhsylv.solvers.stopping import (
    check_divergence,
    error_constant,
    plan_iterations,
    predicted_bound,
)
from akhsylv.utils.logger import get_logger

__all__ = [
    "Observer",
    "block_series_dense",
    "block_series_lowrank",
    "solve_sign_dense",
    "solve_sign_lowrank",
    "SignSolver",
]

logger = get_logger(__name__)

Observer = Callable[[int, Solution], None]


def entries(*arrays: np.ndarray | None) -> int:
    """Stored floating-point entries of the live arrays."""
    return sum(array.size for array in arrays if array is not None)


def weighted_tolerance(config: SolverConfig, rho: float, j: int) -> float:
    """ε_rank·ρ^j/c, or ε_rank when weighting is off."""
    if not config.weighted_compression:
        return config.rank_tolerance
    exponent = min(j * math.log(rho), 700.0)
    return config.rank_tolerance * math.exp(exponent) / config.envelope


def _check_terms(table: RecurrenceTable, alpha: np.ndarray) -> int:
    if alpha.size > table.count:
        raise IndexError(
            f"table holds {table.count} pairs, the series needs {alpha.size}"
        )
    return alpha.size


# ---------------------------------------------------------------------------
# Series engines
# ---------------------------------------------------------------------------


def block_series_dense(
    A: np.ndarray,
    B: np.ndarray,
    C: np.ndarray,
    table: RecurrenceTable,
    alpha: np.ndarray,
    *,
    weight: float,
    bound_constant: float,
    report: ConvergenceReport,
    observer: Observer | None = None,
) -> np.ndarray:
    """Σ_j weight·α_j·(C·p_j(A) + G_j) with three-term windows only.

    G_0 = −C and
    G_{j+1} = (G_j A + p_j(B)C − a_j G_j − b_{j−1} G_{j−1}) / b_j,
    which reduces to (G_0 A + (a_0 + 1)C) / b_0 at j = 0.
    """
    k = _check_terms(table, alpha)
    a, b = table.a, table.b
    m, n = C.shape
    X = np.zeros((m, n))
    pa_prev = pb_prev = g_prev = None
    pa, pb, g = np.eye(n), np.eye(m), -C
    for j in range(k):
        X += (weight * alpha[j]) * (C @ pa + g)
        record = report.add(
            predicted_bound(bound_constant, report.rho, j + 1),
            entries(X, pa, pa_prev, pb, pb_prev, g, g_prev),
        )
        logger.debug(
            "Dense iteration",
            extra={"iteration": record.iteration, "bound": record.bound},
        )
        if observer is not None:
            observer(j + 1, X)
        if j + 1 == k:
            break
        g_next = g @ A + pb @ C - a[j] * g
        pa_next = A @ pa - a[j] * pa
        pb_next = B @ pb - a[j] * pb
        if j > 0:
            g_next -= b[j - 1] * g_prev
            pa_next -= b[j - 1] * pa_prev
            pb_next -= b[j - 1] * pb_prev
        g_prev, g = g, g_next / b[j]
        pa_prev, pa = pa, pa_next / b[j]
        pb_prev, pb = pb, pb_next / b[j]
    return X


def block_series_lowrank(
    A: np.ndarray,
    B: np.ndarray,
    U: np.ndarray,
    V: np.ndarray,
    table: RecurrenceTable,
    alpha: np.ndarray,
    *,
    weight: float,
    bound_constant: float,
    report: ConvergenceReport,
    config: SolverConfig,
    observer: Observer | None = None,
) -> LowRankPair:
    """Factored form of :func:`block_series_dense` with C = U @ V.

    G_j is carried as J_j @ K_j, V·p_j(A) and p_j(B)·U by one-sided
    recurrences. J_j K_j is recompressed with tolerance ε_rank·ρ^j/c before
    it enters W, Z, and W @ Z is recompressed with ε_rank every iteration.
    """
    k = _check_terms(table, alpha)
    a, b = table.a, table.b
    m, n = U.shape[0], V.shape[1]
    eps = config.rank_tolerance
    W, Z = np.zeros((m, 0)), np.zeros((0, n))
    vpa_prev = pbu_prev = J_prev = K_prev = None
    vpa, pbu = V, U
    J, K = -U, V
    for j in range(k):
        jk = truncate(J, K, weighted_tolerance(config, report.rho, j))
        J, K = jk.W, jk.Z
        scale = weight * alpha[j]
        W_new = np.hstack([W, scale * U, scale * J])
        Z_new = np.vstack([Z, vpa, K])
        live = (U, V, vpa, vpa_prev, pbu, pbu_prev, J, K, J_prev, K_prev)
        peak = entries(*live, W_new, Z_new)
        wz = truncate(W_new, Z_new, eps)
        W, Z = wz.W, wz.Z
        rank_jk = J.shape[1]
        if j + 1 < k:
            if j == 0:
                J_next = np.hstack([J, (a[0] + 1.0) * U]) / b[0]
                K_next = np.vstack([K @ A, V])
            else:
                J_next = np.hstack([J, pbu, -a[j] * J, -b[j - 1] * J_prev]) / b[j]
                K_next = np.vstack([K @ A, V, K, K_prev])
            peak = max(peak, entries(*live, W, Z, J_next, K_next))
            vpa_next = vpa @ A - a[j] * vpa
            pbu_next = B @ pbu - a[j] * pbu
            if j > 0:
                vpa_next -= b[j - 1] * vpa_prev
                pbu_next -= b[j - 1] * pbu_prev
            vpa_prev, vpa = vpa, vpa_next / b[j]
            pbu_prev, pbu = pbu, pbu_next / b[j]
            J_prev, K_prev, J, K = J, K, J_next, K_next
        record = report.add(
            predicted_bound(bound_constant, report.rho, j + 1),
            peak,
            rank_jk=rank_jk,
            rank_wz=W.shape[1],
        )
        logger.debug(
            "Low-rank iteration",
            extra={
                "iteration": record.iteration,
                "rank_jk": rank_jk,
                "rank_wz": record.rank_wz,
                "stored_entries": peak,
            },
        )
        if observer is not None:
            observer(j + 1, LowRankPair(W, Z))
    return LowRankPair(W, Z)


# ---------------------------------------------------------------------------
# Method 1
# ---------------------------------------------------------------------------


def _sign_report(
    problem: SylvesterProblem,
    data: AkhiezerData,
    config: SolverConfig,
    nu: float | None,
) -> tuple[int, ConvergenceReport]:
    k = plan_iterations("sign", data.rho, problem.n, problem.m, config)
    return k, ConvergenceReport("sign", data.rho, k, nu=nu)


def _finish(report: ConvergenceReport) -> None:
    logger.info(
        "Solve finished",
        extra={
            "method": report.method,
            "iterations": report.iterations,
            "rho": report.rho,
            "rank_wz": report.max_rank_wz or None,
            "elapsed_ms": report.elapsed_ms,
        },
    )


def solve_sign_dense(
    problem: SylvesterProblem,
    data: AkhiezerData,
    config: SolverConfig,
    *,
    nu: float | None = None,
    observer: Observer | None = None,
) -> tuple[np.ndarray, ConvergenceReport]:
    """Dense Method 1; X_{k+1} = X_k + (α_k/2)(C·p_k(A) + G_k).

    Args:
    ----
        problem: Equation with a dense (or densified) right-hand side.
        data: Sign data on Σ = domain_B ∪ domain_A.
        config: Stopping and compression settings.
        nu: Divergence diagnostic to store in the report.
        observer: Called with (iteration, X) after every update.

    Returns:
    -------
        The iterate X and the convergence report.

    """
    k, report = _sign_report(problem, data, config, nu)
    X = block_series_dense(
        problem.A,
        problem.B,
        problem.rhs(),
        data.table,
        data.coeffs.take(k),
        weight=0.5,
        bound_constant=0.5 * error_constant("sign", problem.n, problem.m),
        report=report,
        observer=observer,
    )
    _finish(report)
    return X, report


def solve_sign_lowrank(
    problem: SylvesterProblem,
    data: AkhiezerData,
    config: SolverConfig,
    *,
    nu: float | None = None,
    observer: Observer | None = None,
) -> tuple[LowRankPair, ConvergenceReport]:
    """Low-rank Method 1 for C = U @ V; returns factors W, Z of X."""
    if not problem.is_low_rank:
        raise ValueError("low-rank solves need a factored right-hand side")
    k, report = _sign_report(problem, data, config, nu)
    X = block_series_lowrank(
        problem.A,
        problem.B,
        np.asarray(problem.U, dtype=np.float64),
        np.asarray(problem.V, dtype=np.float64),
        data.table,
        data.coeffs.take(k),
        weight=0.5,
        bound_constant=0.5 * error_constant("sign", problem.n, problem.m),
        report=report,
        config=config,
        observer=observer,
    )
    _finish(report)
    return X, report


class SignSolver(BaseSylvesterSolver):
    """Method 1 with data built from the problem's interval hints."""

    method = "sign"

    def solve(
        self, problem: SylvesterProblem, *, observer: Observer | None = None
    ) -> tuple[Solution, ConvergenceReport]:
        domain_A, domain_B = problem.require_domains()
        domain, _ = sign_domain(domain_A, domain_B)
        rate = sign_rate(domain)
        nu = None
        if problem.eigs_A is not None or problem.eigs_B is not None:
            samples = [
                np.ravel(e) for e in (problem.eigs_A, problem.eigs_B) if e is not None
            ]
            nu = check_divergence(domain, np.concatenate(samples), rate.z_star)
        k = plan_iterations("sign", rate.rho, problem.n, problem.m, self.config)
        data = sign_data(domain_A, domain_B, k, self.config)
        if problem.is_low_rank:
            return solve_sign_lowrank(
                problem, data, self.config, nu=nu, observer=observer
            )
        return solve_sign_dense(problem, data, self.config, nu=nu, observer=observer)
