"""Benchmark tables behind the convergence, rank and storage experiments.

Each figure is a function returning a :class:`FigureTable`; the ``bench``
command writes it as CSV. Problems are seeded, so a figure is reproducible
from its settings alone.
"""

from __future__ import annotations

import math
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from scipy.optimize import brentq

from akhsylv.config import Config, SolverConfig
from akhsylv.core.akhiezer import (
    WeightSpec,
    akhiezer_recurrence,
    general_f_coeffs,
    sign_coeffs_circles,
)
from akhsylv.core.cutdomain import (
    CutDomain,
    Interval,
    effective_rate,
    green_real,
    nu,
    parse_domain,
    sign_rate,
)
from akhsylv.core.linalg import random_factors
from akhsylv.services.oracles import (
    KnownFactorization,
    KnownProblem,
    daleckii_krein_oracle,
    known_problem,
    sample_spectrum,
)
from akhsylv.solvers.base import LowRankPair, Solution
from akhsylv.solvers.data import sign_domain
from akhsylv.solvers.frechet import frechet
from akhsylv.solvers.inverse import InverseSolver
from akhsylv.solvers.report import ConvergenceReport
from akhsylv.solvers.sign import SignSolver
from akhsylv.solvers.stopping import (
    error_constant,
    iterations_for_tolerance,
    predicted_bound,
)
from akhsylv.utils.logger import get_logger

__all__ = ["BenchSettings", "FigureTable", "FIGURES", "run_figure"]

logger = get_logger(__name__)

INTERVAL_A = Interval(lo=2.0, hi=3.0)
INTERVAL_B = Interval(lo=-1.8, hi=-0.5)
FRECHET_DOMAIN = CutDomain.of((-2.0, -0.5), (0.5, 6.0))
# outliers sit where re 𝔤 reaches this fraction of log ρ
OFF_SIGMA_LEVEL = 0.5


class BenchSettings(BaseModel):
    """Sizes and seed of a benchmark run."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(default=200, ge=1)
    m: int = Field(default=200, ge=1)
    rank: int = Field(default=2, ge=1)
    seed: int = Config.DEFAULT_SEED
    domain: str = "-1.8,-0.5;2,3"
    count: int = Field(default=80, ge=1)
    tolerance: float = Field(default=1e-12, gt=0.0, lt=1.0)


@dataclass(frozen=True)
class FigureTable:
    """Columns and rows of one figure."""

    name: str
    columns: tuple[str, ...]
    rows: list[tuple]


class _ErrorTrace:
    """Observer collecting ‖X_k − X_*‖ per iteration."""

    def __init__(self, reference: np.ndarray, norm: int | str) -> None:
        self.reference = reference
        self.norm = norm
        self.errors: list[float] = []

    def __call__(self, _iteration: int, iterate: Solution) -> None:
        dense = iterate.dense() if isinstance(iterate, LowRankPair) else iterate
        self.errors.append(float(np.linalg.norm(dense - self.reference, self.norm)))


def _config(settings: BenchSettings, **updates) -> SolverConfig:
    return SolverConfig(tolerance=settings.tolerance, **updates)


def _known(
    settings: BenchSettings,
    domain_A: Interval = INTERVAL_A,
    domain_B: Interval = INTERVAL_B,
    **options,
) -> KnownProblem:
    return known_problem(
        settings.n,
        settings.m,
        domain_A,
        domain_B,
        rank=settings.rank,
        seed=settings.seed,
        **options,
    )


def _padded(values: list, length: int) -> list:
    return values + [None] * (length - len(values))


# ---------------------------------------------------------------------------
# Figures
# ---------------------------------------------------------------------------


def err_heur(settings: BenchSettings) -> FigureTable:
    """Method 1 spectral-norm errors against the 5(n+m) bound."""
    known = _known(settings, low_rank=False)
    trace = _ErrorTrace(known.solution, 2)
    _, report = SignSolver(_config(settings)).solve(known.problem, observer=trace)
    rows = [
        (r.iteration, err, r.bound)
        for r, err in zip(report.records, trace.errors, strict=True)
    ]
    return FigureTable("err-heur", ("iter", "error", "bound"), rows)


def err_heur_inv(settings: BenchSettings) -> FigureTable:
    """Method 2 Frobenius errors against the 20(n+m) bound."""
    known = _known(settings, low_rank=False)
    trace = _ErrorTrace(known.solution, "fro")
    _, report = InverseSolver(_config(settings)).solve(known.problem, observer=trace)
    rows = [
        (r.iteration, err, r.bound)
        for r, err in zip(report.records, trace.errors, strict=True)
    ]
    return FigureTable("err-heur-inv", ("iter", "error", "bound"), rows)


def _rank_runs(settings: BenchSettings, solver_type) -> FigureTable:
    known = _known(settings)
    runs = []
    for weighted in (True, False):
        trace = _ErrorTrace(known.solution, 2)
        config = _config(settings, weighted_compression=weighted)
        _, report = solver_type(config).solve(known.problem, observer=trace)
        runs.append((report, trace.errors))
    (on, on_err), (off, off_err) = runs
    rows = [
        (a.iteration, a.rank_jk, a.rank_wz, e_on, b.rank_jk, b.rank_wz, e_off)
        for a, e_on, b, e_off in zip(on.records, on_err, off.records, off_err)
    ]
    columns = (
        "iter",
        "rank_jk_weighted",
        "rank_wz_weighted",
        "error_weighted",
        "rank_jk_plain",
        "rank_wz_plain",
        "error_plain",
    )
    return FigureTable("weight-rank", columns, rows)


def weight_rank(settings: BenchSettings) -> FigureTable:
    """Low-rank Method 1 ranks with and without weighted compression."""
    return _rank_runs(settings, SignSolver)


def weight_rank_inv(settings: BenchSettings) -> FigureTable:
    """Low-rank Method 2 ranks with and without weighted compression."""
    table = _rank_runs(settings, InverseSolver)
    return FigureTable("weight-rank-inv", table.columns, table.rows)


def mult_int_inv(settings: BenchSettings) -> FigureTable:
    """Method 2 with one operator interval against two when σ(A) has an outlier."""
    eigs_A = np.append(
        sample_spectrum(Interval(lo=0.5, hi=1.0), settings.n - 1, settings.seed + 3),
        10.0,
    )
    known = _known(settings, Interval(lo=0.5, hi=10.0), eigs_A=eigs_A)
    single = Interval(lo=1.0, hi=11.8)
    split = CutDomain.of((1.0, 2.8), (10.5, 11.8))
    errors = []
    for domain in (single, split):
        trace = _ErrorTrace(known.solution, "fro")
        InverseSolver(_config(settings), operator_domain=domain).solve(
            known.problem, observer=trace
        )
        errors.append(trace.errors)
    length = max(len(e) for e in errors)
    rows = list(
        zip(
            range(1, length + 1),
            _padded(errors[0], length),
            _padded(errors[1], length),
        )
    )
    return FigureTable("mult-int-inv", ("iter", "error_single", "error_two"), rows)


def coeff_rate(settings: BenchSettings) -> FigureTable:
    """|α_j| of the sign series next to the envelope 5ρ^{-j}."""
    domain = parse_domain(settings.domain)
    table = akhiezer_recurrence(domain, settings.count)
    coeffs = sign_coeffs_circles(WeightSpec.for_domain(domain), table, settings.count)
    return FigureTable("coeff-rate", ("j", "abs_alpha", "envelope"), coeffs.to_rows())


def storage(settings: BenchSettings) -> FigureTable:
    """Stored entries of both low-rank methods with their (10R+6r)(m+n) limits."""
    known = _known(settings)
    rows = []
    for solver in (SignSolver(_config(settings)), InverseSolver(_config(settings))):
        _, report = solver.solve(known.problem)
        rank = max(report.max_rank_jk, report.max_rank_wz)
        limit = (10 * rank + 6 * settings.rank) * (settings.m + settings.n)
        rows.extend(
            (solver.method, r.iteration, r.stored_entries, limit)
            for r in report.records
        )
    columns = ("method", "iter", "stored_entries", "limit")
    return FigureTable("storage", columns, rows)


def off_sigma_outliers(domain: CutDomain, level: float) -> tuple[float, float]:
    """Real points beside the upper interval with re 𝔤 = level·log ρ.

    One lies in the gap between z* and the interval, the other past its
    right end, so both are off Σ and inside the level curve of ρ.
    """
    rate = sign_rate(domain)
    target = level * math.log(rate.rho)
    upper = domain.intervals[-1]

    def excess(x: float) -> float:
        return green_real(domain, x) - target

    inner = brentq(excess, rate.z_star, upper.lo, xtol=1e-14)
    outer = brentq(excess, upper.hi, upper.hi + 2.0 * upper.half, xtol=1e-14)
    return inner, outer


def off_sigma(settings: BenchSettings) -> FigureTable:
    """Method 1 with eigenvalues of A moved off Σ, against e^{νk}."""
    domain_A = Interval(lo=0.5, hi=6.0)
    domain_B = Interval(lo=-2.0, hi=-0.5)
    domain, _ = sign_domain(domain_A, domain_B)
    eigs_A = sample_spectrum(domain_A, settings.n, settings.seed + 3)
    eigs_A[0], eigs_A[-1] = off_sigma_outliers(domain, OFF_SIGMA_LEVEL)
    known = _known(settings, domain_A, domain_B, eigs_A=eigs_A, attach_eigs=True)
    spectrum = np.concatenate([eigs_A, known.fact_B.eigenvalues])
    nu_value = nu(domain, spectrum, sign_rate(domain).z_star)
    rate = effective_rate(nu_value)
    k = iterations_for_tolerance(
        "sign", rate, settings.tolerance, settings.n, settings.m
    )
    trace = _ErrorTrace(known.solution, 2)
    _, report = SignSolver(_config(settings, max_iterations=k)).solve(
        known.problem, observer=trace
    )
    constant = 0.5 * error_constant("sign", settings.n, settings.m)
    rows = [
        (r.iteration, err, r.bound, predicted_bound(constant, rate, r.iteration))
        for r, err in zip(report.records, trace.errors, strict=True)
    ]
    return FigureTable("off-sigma", ("iter", "error", "bound", "bound_nu"), rows)


def frechet_errors(settings: BenchSettings) -> FigureTable:
    """Fréchet derivative errors for sign and exp against divided differences."""
    n = settings.n
    fact = KnownFactorization.random(
        np.concatenate(
            [
                sample_spectrum(FRECHET_DOMAIN.intervals[0], n // 2, settings.seed + 3),
                sample_spectrum(
                    FRECHET_DOMAIN.intervals[1], n - n // 2, settings.seed + 4
                ),
            ]
        ),
        settings.seed,
    )
    A = fact.matrix()
    U, V = random_factors(n, 4, n, settings.seed + 2)
    E = LowRankPair(U, V)
    spec = WeightSpec.for_domain(FRECHET_DOMAIN)
    rho = sign_rate(FRECHET_DOMAIN).rho
    k = iterations_for_tolerance("sign", rho, settings.tolerance, n, n)
    table = akhiezer_recurrence(FRECHET_DOMAIN, k)
    config = _config(settings)
    series = {
        "sign": (
            sign_coeffs_circles(spec, table, k),
            daleckii_krein_oracle(fact, U @ V, np.sign, np.zeros_like),
        ),
        "exp": (
            general_f_coeffs(np.exp, spec, table, k, rho=rho),
            daleckii_krein_oracle(fact, U @ V, np.exp, np.exp),
        ),
    }
    errors: dict[str, list[float]] = {}
    reports: dict[str, ConvergenceReport] = {}
    for name, (coeffs, reference) in series.items():
        trace = _ErrorTrace(reference, 2)
        _, reports[name] = frechet(
            A, E, coeffs, table, config, rho=rho, observer=trace
        )
        errors[name] = trace.errors
    rows = [
        (r.iteration, e_sign, r.bound, e_exp)
        for r, e_sign, e_exp in zip(
            reports["sign"].records, errors["sign"], errors["exp"], strict=True
        )
    ]
    return FigureTable("frechet", ("iter", "error_sign", "bound", "error_exp"), rows)


FIGURES: dict[str, Callable[[BenchSettings], FigureTable]] = {
    "err-heur": err_heur,
    "err-heur-inv": err_heur_inv,
    "weight-rank": weight_rank,
    "weight-rank-inv": weight_rank_inv,
    "mult-int-inv": mult_int_inv,
    "coeff-rate": coeff_rate,
    "storage": storage,
    "off-sigma": off_sigma,
    "frechet": frechet_errors,
}


def run_figure(name: str, settings: BenchSettings | None = None) -> FigureTable:
    """Compute the table of figure ``name``."""
    if name not in FIGURES:
        raise KeyError(f"unknown figure {name!r}; choose from {sorted(FIGURES)}")
    settings = settings or BenchSettings()
    logger.info("Running benchmark", extra={"figure": name})
    table = FIGURES[name](settings)
    logger.info(
        "Benchmark finished",
        extra={"figure": name, "iterations": len(table.rows)},
    )
    return table
