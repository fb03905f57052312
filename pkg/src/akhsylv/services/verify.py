"""Acceptance suites run by the ``verify`` command.

Every check measures one quantity against a threshold from
:data:`THRESHOLDS`. Sizes stay small so a suite finishes in seconds.
"""

from __future__ import annotations

import math
from collections.abc import Callable
from dataclasses import dataclass, field

import numpy as np

from akhsylv.config import Config, SolverConfig
from akhsylv.core.akhiezer import (
    STIELTJES_NODE_FACTOR,
    WeightSpec,
    akhiezer_recurrence,
    inverse_coeffs_chebyshev,
    sigma_quadrature,
    sign_coeffs_circles,
    sign_coeffs_pv,
    stieltjes_recurrence,
    symmetric_akhiezer_recurrence,
)
from akhsylv.core.cutdomain import (
    CutDomain,
    Interval,
    inverse_rate,
    parse_domain,
    sign_rate,
)
from akhsylv.services.oracles import (
    KnownFactorization,
    daleckii_krein_oracle,
    known_problem,
    kron_lu_oracle,
)
from akhsylv.solvers.base import LowRankPair, Solution, SylvesterProblem
from akhsylv.solvers.data import sign_data
from akhsylv.solvers.inverse import InverseSolver
from akhsylv.solvers.matfun import akhiezer_matfun
from akhsylv.solvers.sign import SignSolver, solve_sign_dense
from akhsylv.utils.logger import get_logger

__all__ = ["Check", "SuiteResult", "SUITES", "THRESHOLDS", "run_suite"]

logger = get_logger(__name__)

THRESHOLDS: dict[str, float] = {
    "eigen-vs-kron": 1e-10,
    "kron-residual": 1e-10,
    "dk-identity": 1e-12,
    "sign-vs-kron": 1e-8,
    "inverse-vs-kron": 1e-8,
    "lowrank-vs-kron": 1e-8,
    "block-identity": 1e-11,
    "storage": 1.0,
    "stieltjes-closed-form": 1e-10,
    "envelope": 0.0,
    "circles-vs-pv": 1e-10,
    "chebyshev-inverse": 1e-15,
    "sign-rate": 1e-8,
    "inverse-rate": 1e-8,
    "inverse-rate-exact": 1e-15,
}

SMALL_N = 14
SMALL_M = 11
ORACLE_INSTANCES = 20
SOLVER_INSTANCES = 20
COEFF_DOMAINS = ("-1.8,-0.5;2,3", "-1.8,-0.1;0.1,3")
RATE_BETAS = (0.1, 0.3, 0.5)


@dataclass(frozen=True)
class Check:
    """One measured value against its threshold."""

    name: str
    value: float
    threshold: float

    @property
    def passed(self) -> bool:
        return bool(self.value <= self.threshold)


@dataclass
class SuiteResult:
    """Checks of one suite in the order they ran."""

    suite: str
    checks: list[Check] = field(default_factory=list)

    def record(self, name: str, value: float) -> Check:
        check = Check(name, float(value), THRESHOLDS[name])
        self.checks.append(check)
        return check

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_rows(self) -> list[tuple]:
        return [
            (self.suite, c.name, c.value, c.threshold, "pass" if c.passed else "FAIL")
            for c in self.checks
        ]


def _relative(X: np.ndarray, reference: np.ndarray) -> float:
    return float(np.linalg.norm(X - reference) / (np.linalg.norm(reference) or 1.0))


# ---------------------------------------------------------------------------
# Suites
# ---------------------------------------------------------------------------


def oracles_suite(seed: int) -> SuiteResult:
    """Eigen and Kronecker oracles agree; Daleckii-Krein of x ↦ x is E."""
    result = SuiteResult("oracles")
    worst_gap = worst_residual = 0.0
    for offset in range(ORACLE_INSTANCES):
        known = known_problem(
            SMALL_N,
            SMALL_M,
            Interval(lo=1.0, hi=3.0),
            Interval(lo=-2.0, hi=-0.5),
            seed=seed + 10 * offset,
            low_rank=False,
        )
        problem = known.problem
        X = kron_lu_oracle(problem.A, problem.B, problem.C)
        worst_gap = max(worst_gap, _relative(known.solution, X))
        worst_residual = max(worst_residual, problem.residual(X))
    result.record("eigen-vs-kron", worst_gap)
    result.record("kron-residual", worst_residual)

    fact = KnownFactorization.random(np.linspace(-1.0, 1.0, SMALL_N), seed)
    E = np.random.default_rng(seed).standard_normal((SMALL_N, SMALL_N))
    L = daleckii_krein_oracle(fact, E, lambda x: x, np.ones_like)
    result.record("dk-identity", _relative(L, E))
    return result


def _kron_gap(problem: SylvesterProblem, X: Solution) -> float:
    dense = X.dense() if isinstance(X, LowRankPair) else X
    return _relative(dense, kron_lu_oracle(problem.A, problem.B, problem.rhs()))


def solvers_suite(seed: int) -> SuiteResult:
    """Both methods against the Kronecker oracle, plus the block identity."""
    result = SuiteResult("solvers")
    config = SolverConfig()
    domain_A, domain_B = Interval(lo=2.0, hi=3.0), Interval(lo=-1.8, hi=-0.5)
    sign_gap = inverse_gap = 0.0
    for offset in range(SOLVER_INSTANCES):
        known = known_problem(
            SMALL_N, SMALL_M, domain_A, domain_B, seed=seed + offset, low_rank=False
        )
        X, _ = SignSolver(config).solve(known.problem)
        sign_gap = max(sign_gap, _kron_gap(known.problem, X))
        X, _ = InverseSolver(config).solve(known.problem)
        inverse_gap = max(inverse_gap, _kron_gap(known.problem, X))
    result.record("sign-vs-kron", sign_gap)
    result.record("inverse-vs-kron", inverse_gap)

    known = known_problem(SMALL_N, SMALL_M, domain_A, domain_B, seed=seed)
    lowrank_gap = 0.0
    storage_ratio = 0.0
    for solver in (SignSolver(config), InverseSolver(config)):
        X, report = solver.solve(known.problem)
        lowrank_gap = max(lowrank_gap, _kron_gap(known.problem, X))
        rank = max(report.max_rank_jk, report.max_rank_wz)
        limit = (10 * rank + 6 * known.problem.U.shape[1]) * (SMALL_N + SMALL_M)
        storage_ratio = max(storage_ratio, report.max_stored_entries / limit)
    result.record("lowrank-vs-kron", lowrank_gap)
    result.record("storage", storage_ratio)
    result.record("block-identity", _block_identity_gap(seed, config))
    return result


def _block_identity_gap(seed: int, config: SolverConfig) -> float:
    """max_k ‖LL(F_k(H)) − 2X_k‖_F / ‖C‖_F over a fixed number of terms."""
    n, m, k = 12, 9, 30
    known = known_problem(
        n,
        m,
        Interval(lo=2.0, hi=3.0),
        Interval(lo=-1.8, hi=-0.5),
        seed=seed,
        low_rank=False,
    )
    problem = known.problem
    fixed = config.model_copy(update={"max_iterations": k})
    data = sign_data(problem.domain_A, problem.domain_B, k, fixed)
    iterates: list[np.ndarray] = []
    solve_sign_dense(
        problem, data, fixed, observer=lambda _j, X: iterates.append(X.copy())
    )
    H = np.block([[problem.A, np.zeros((n, m))], [problem.C, problem.B]])
    scale = float(np.linalg.norm(problem.C)) or 1.0
    gaps: list[float] = []

    def compare(j: int, F: np.ndarray) -> None:
        gaps.append(float(np.linalg.norm(F[n:, :n] - 2.0 * iterates[j - 1])) / scale)

    akhiezer_matfun(H, data.coeffs, data.table, k, observer=compare)
    return max(gaps)


def coeffs_suite(seed: int) -> SuiteResult:
    """Recurrence closed form, coefficient envelope and contour agreement."""
    del seed
    result = SuiteResult("coeffs")
    count = 40
    domain = CutDomain.of((-1.0, -0.5), (0.5, 1.0))
    spec = WeightSpec(domain=domain, kind="akhiezer")
    quad = sigma_quadrature(spec, STIELTJES_NODE_FACTOR * (count + 1))
    computed = stieltjes_recurrence(spec, quad, count)
    exact = symmetric_akhiezer_recurrence(0.5, 0.0, 1.0, count)
    gap = max(
        np.max(np.abs(computed.a - exact.a)), np.max(np.abs(computed.b - exact.b))
    )
    result.record("stieltjes-closed-form", gap)

    violations = 0
    agreement = 0.0
    for text in COEFF_DOMAINS:
        cut = parse_domain(text)
        rho = sign_rate(cut).rho
        terms = int(math.ceil(-math.log(1e-16 / 5.0) / math.log(rho)))
        table = akhiezer_recurrence(cut, terms)
        weight = WeightSpec.for_domain(cut)
        circles = sign_coeffs_circles(weight, table, terms)
        pv = sign_coeffs_pv(weight, table, terms, 400)
        violations += int(circles.envelope_violations().size)
        agreement = max(agreement, float(np.max(np.abs(circles.alpha - pv.alpha))))
    result.record("envelope", violations)
    result.record("circles-vs-pv", agreement)

    scalars = inverse_coeffs_chebyshev(Interval(lo=0.25, hi=2.25), 2).alpha
    expected = np.array([4.0 / 3.0, -math.sqrt(2.0) * 2.0 / 3.0])
    result.record("chebyshev-inverse", float(np.max(np.abs(scalars - expected))))
    return result


def rates_suite(seed: int) -> SuiteResult:
    """Closed-form sign and inverse rates on symmetric domains."""
    del seed
    result = SuiteResult("rates")
    sign_error = inverse_error = 0.0
    for beta in RATE_BETAS:
        rate = sign_rate(CutDomain.of((-1.0, -beta), (beta, 1.0)))
        expected = math.sqrt((1.0 - beta) / (1.0 + beta))
        sign_error = max(sign_error, abs(1.0 / rate.rho - expected) / expected)
        ratio = abs(inverse_rate(Interval(lo=2.0 * beta, hi=2.0)))
        root = math.sqrt(beta)
        expected = (1.0 - root) / (1.0 + root)
        inverse_error = max(inverse_error, abs(ratio - expected) / expected)
    result.record("sign-rate", sign_error)
    result.record("inverse-rate", inverse_error)
    exact = inverse_rate(Interval(lo=0.25, hi=2.25))
    result.record("inverse-rate-exact", abs(exact + 0.5))
    return result


SUITES: dict[str, Callable[[int], SuiteResult]] = {
    "oracles": oracles_suite,
    "solvers": solvers_suite,
    "coeffs": coeffs_suite,
    "rates": rates_suite,
}


def run_suite(name: str, seed: int = Config.DEFAULT_SEED) -> SuiteResult:
    """Run suite ``name`` and log each failure."""
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    logger.info("Running verification suite", extra={"suite": name})
    result = SUITES[name](seed)
    for check in result.failures:
        logger.warning(
            "Verification check %s failed",
            check.name,
            extra={"suite": name, "bound": check.threshold, "errors": check.value},
        )
    logger.info(
        "Verification suite finished",
        extra={"suite": name, "errors": len(result.failures)},
    )
    return result
