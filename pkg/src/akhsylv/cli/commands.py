"""Request models and handlers behind the ``akhsylv`` subcommands.

Each request is a pydantic model validated from the parsed flags before any
computation runs. Handlers write their CSV result to ``out`` (stdout in the
CLI) and return the process exit code.
"""

from __future__ import annotations

from collections.abc import Callable
from pathlib import Path
from typing import Annotated, Literal, Optional, TextIO

import numpy as np
from pydantic import (
    BaseModel,
    BeforeValidator,
    ConfigDict,
    Field,
    field_validator,
    model_validator,
)

from akhsylv.config import Config, SolverConfig
from akhsylv.core.akhiezer import (
    CoefficientStream,
    WeightSpec,
    general_f_coeffs,
    recurrence_for,
    sign_coeffs_circles,
    sign_coeffs_pv,
)
from akhsylv.core.cutdomain import (
    CutDomain,
    Interval,
    g_grid,
    inverse_rate,
    inverse_rho,
    parse_domain,
    sign_rate,
)
from akhsylv.exceptions import UsageError
from akhsylv.services.bench import FIGURES, BenchSettings, run_figure
from akhsylv.services.integral_equations import (
    PRESETS,
    build_integral_system,
    preset,
    solve_fredholm,
    solve_generalized,
)
from akhsylv.services.results import ResultStore
from akhsylv.services.verify import SUITES, run_suite
from akhsylv.solvers.base import BaseSylvesterSolver, LowRankPair, SylvesterProblem
from akhsylv.solvers.compression import numerical_rank
from akhsylv.solvers.data import inverse_data
from akhsylv.solvers.frechet import frechet
from akhsylv.solvers.inverse import InverseSolver
from akhsylv.solvers.sign import SignSolver
from akhsylv.solvers.stopping import iterations_for_tolerance, plan_iterations
from akhsylv.utils.helpers import read_matrix, write_csv

__all__ = [
    "COMMANDS",
    "RatesRequest",
    "CoeffsRequest",
    "SolveRequest",
    "BenchRequest",
    "FredholmRequest",
    "FrechetRequest",
    "GridRequest",
    "VerifyRequest",
]

RATE_TOLERANCES = (1e-4, 1e-6, 1e-8, 1e-10, 1e-12)
RATE_SIZES = (100, 1000)

RATE_COLUMNS = ("method", "z_star", "rho", "rho_inv", "tolerance", "n", "iterations")
COEFF_COLUMNS = ("j", "alpha", "abs_alpha", "envelope")
FREDHOLM_COLUMNS = ("preset", "n", "iterations", "gmres_iterations", "rank", "residual")
GRID_COLUMNS = ("re", "im", "exp_g")
VERIFY_COLUMNS = ("suite", "check", "value", "threshold", "status")

SOLVERS: dict[str, type[BaseSylvesterSolver]] = {
    "sign": SignSolver,
    "inverse": InverseSolver,
}


# ---------------------------------------------------------------------------
# Flag parsing
# ---------------------------------------------------------------------------


def _numbers(text: str, count: int, what: str) -> list[str]:
    parts = text.split(",")
    if len(parts) != count:
        raise ValueError(f"expected {count} comma-separated values for {what}")
    return parts


def _interval(value: object) -> object:
    if isinstance(value, str):
        lo, hi = _numbers(value, 2, "an interval")
        return Interval(lo=float(lo), hi=float(hi))
    return value


def _domain(value: object) -> object:
    return parse_domain(value) if isinstance(value, str) else value


def _window(value: object) -> object:
    if isinstance(value, str):
        return tuple(float(v) for v in _numbers(value, 4, "the window"))
    return value


def _resolution(value: object) -> object:
    if isinstance(value, str):
        return tuple(int(v) for v in _numbers(value, 2, "the resolution"))
    return value


IntervalFlag = Annotated[Interval, BeforeValidator(_interval)]
DomainFlag = Annotated[CutDomain, BeforeValidator(_domain)]


class _Request(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")


class _SolverFlags(_Request):
    """Flags shared by the commands that run a series solver."""

    tol: float = Field(default=1e-12, gt=0.0, lt=1.0)
    max_iterations: Optional[int] = Field(default=None, ge=1)
    rank_tol: float = Field(default=1e-14, ge=0.0)
    no_weighting: bool = False

    def solver_config(self) -> SolverConfig:
        return SolverConfig(
            tolerance=self.tol,
            max_iterations=self.max_iterations,
            rank_tolerance=self.rank_tol,
            weighted_compression=not self.no_weighting,
        )


def _right_hand_side(
    c: Path | None, u: Path | None, v: Path | None, name: str
) -> None:
    factored = u is not None or v is not None
    if (c is not None) == factored or (u is None) != (v is None):
        raise ValueError(f"pass either --{name} or both --u and --v")


def _factors_or_dense(c: Path | None, u: Path | None, v: Path | None):
    if c is not None:
        return read_matrix(c)
    return LowRankPair(read_matrix(u), read_matrix(v))


# ---------------------------------------------------------------------------
# rates
# ---------------------------------------------------------------------------


class RatesRequest(_Request):
    """``rates --domain D [--method sign|inverse]``."""

    domain: DomainFlag
    method: Literal["sign", "inverse"] = "sign"


def run_rates(request: RatesRequest, out: TextIO) -> int:
    """z*, ρ, ρ⁻¹ and predicted iteration counts on a grid of tolerances."""
    domain = request.domain
    if request.method == "sign":
        rate = sign_rate(domain)
        z_star, rho, rho_inv = rate.z_star, rate.rho, 1.0 / rate.rho
    else:
        z_star, rho = 0.0, inverse_rho(domain)
        if len(domain.intervals) == 1:
            rho_inv = inverse_rate(domain.intervals[0])
        else:
            rho_inv = 1.0 / rho
    rows = [
        (
            request.method,
            z_star,
            rho,
            rho_inv,
            tol,
            size,
            iterations_for_tolerance(request.method, rho, tol, size, size),
        )
        for tol in RATE_TOLERANCES
        for size in RATE_SIZES
    ]
    write_csv(out, RATE_COLUMNS, rows)
    return 0


# ---------------------------------------------------------------------------
# coeffs
# ---------------------------------------------------------------------------


class CoeffsRequest(_Request):
    """``coeffs --domain D --count N [--function F] [--source S]``."""

    domain: DomainFlag
    count: int = Field(default=60, ge=1)
    function: Literal["sign", "inverse", "exp"] = "sign"
    source: Literal["circles", "pv"] = "circles"
    nodes: int = Field(default=200, ge=8)

    @model_validator(mode="after")
    def _check_source(self) -> "CoeffsRequest":
        if self.source == "pv" and self.function != "sign":
            raise ValueError("the principal-value source only computes sign series")
        return self


def coefficient_stream(request: CoeffsRequest) -> CoefficientStream:
    """Build the stream a :class:`CoeffsRequest` describes."""
    if request.function == "inverse":
        return inverse_data(request.domain, request.count).coeffs
    spec = WeightSpec.for_domain(request.domain)
    table = recurrence_for(spec, request.count)
    if request.function == "exp":
        return general_f_coeffs(np.exp, spec, table, request.count, request.nodes)
    if request.source == "pv":
        return sign_coeffs_pv(spec, table, request.count, request.nodes)
    return sign_coeffs_circles(spec, table, request.count, request.nodes)


def run_coeffs(request: CoeffsRequest, out: TextIO) -> int:
    stream = coefficient_stream(request)
    rows = [
        (j, float(a), float(abs(a)), float(e))
        for j, (a, e) in enumerate(zip(stream.alpha, stream.envelope(), strict=True))
    ]
    write_csv(out, COEFF_COLUMNS, rows)
    return 0


# ---------------------------------------------------------------------------
# solve
# ---------------------------------------------------------------------------


class SolveRequest(_SolverFlags):
    """``solve --method M --a A --b B (--c C | --u U --v V) ...``."""

    method: Literal["sign", "inverse"]
    a: Path
    b: Path
    c: Optional[Path] = None
    u: Optional[Path] = None
    v: Optional[Path] = None
    dom_a: IntervalFlag
    dom_b: IntervalFlag
    out_prefix: str
    log: Optional[Path] = None

    @model_validator(mode="after")
    def _check_rhs(self) -> "SolveRequest":
        _right_hand_side(self.c, self.u, self.v, "c")
        return self


def run_solve(request: SolveRequest, out: TextIO) -> int:
    """Solve XA − BX = C from matrix files and write X (or W, Z) and the report.

    The report goes to ``--log`` when given and to ``out`` otherwise.
    """
    rhs = _factors_or_dense(request.c, request.u, request.v)
    factors = (
        {"U": rhs.W, "V": rhs.Z} if isinstance(rhs, LowRankPair) else {"C": rhs}
    )
    problem = SylvesterProblem(
        A=read_matrix(request.a),
        B=read_matrix(request.b),
        domain_A=request.dom_a,
        domain_B=request.dom_b,
        **factors,
    )
    solver = SOLVERS[request.method](request.solver_config())
    X, report = solver.solve(problem)
    store = ResultStore()
    store.write_solution(request.out_prefix, X)
    if request.log is not None:
        store.write_report(request.log, report)
    else:
        report.write_csv(out)
    return 0


# ---------------------------------------------------------------------------
# bench
# ---------------------------------------------------------------------------


class BenchRequest(_Request):
    """``bench --figure F [--n N --m M --seed S] [--out DIR]``."""

    figure: str
    n: int = Field(default=200, ge=1)
    m: int = Field(default=200, ge=1)
    rank: int = Field(default=2, ge=1)
    seed: int = Config.DEFAULT_SEED
    domain: str = "-1.8,-0.5;2,3"
    count: int = Field(default=80, ge=1)
    tol: float = Field(default=1e-12, gt=0.0, lt=1.0)
    out: Optional[Path] = None

    @field_validator("figure")
    @classmethod
    def _known_figure(cls, value: str) -> str:
        if value not in FIGURES:
            raise ValueError(f"unknown figure {value!r}; choose from {sorted(FIGURES)}")
        return value

    @field_validator("domain")
    @classmethod
    def _parsable_domain(cls, value: str) -> str:
        parse_domain(value)
        return value


def run_bench(request: BenchRequest, out: TextIO) -> int:
    settings = BenchSettings(
        n=request.n,
        m=request.m,
        rank=request.rank,
        seed=request.seed,
        domain=request.domain,
        count=request.count,
        tolerance=request.tol,
    )
    table = run_figure(request.figure, settings)
    if request.out is not None:
        ResultStore(request.out).write_table(
            f"{table.name}.csv", table.columns, table.rows
        )
    else:
        write_csv(out, table.columns, table.rows)
    return 0


# ---------------------------------------------------------------------------
# fredholm
# ---------------------------------------------------------------------------


class FredholmRequest(_SolverFlags):
    """``fredholm --preset P [--n N --delta D] [--out-prefix P --log L]``."""

    preset: str
    n: int = Field(default=200, ge=2)
    delta: float = Field(default=0.9, gt=0.0)
    out_prefix: Optional[str] = None
    log: Optional[Path] = None

    @field_validator("preset")
    @classmethod
    def _known_preset(cls, value: str) -> str:
        if value not in PRESETS:
            raise ValueError(f"unknown preset {value!r}; choose from {sorted(PRESETS)}")
        return value


def run_fredholm(request: FredholmRequest, out: TextIO) -> int:
    """Collocate a preset equation and solve it, coupled term included."""
    spec = preset(request.preset, request.n, request.delta)
    config = request.solver_config()
    if spec.generalized:
        result = solve_generalized(spec, config)
        U, report, gmres_iterations = (
            result.U,
            result.inner_report,
            result.gmres_iterations,
        )
        rank = numerical_rank(U, config.rank_tolerance)
    else:
        U, report = solve_fredholm(spec, config)
        gmres_iterations, rank = 0, U.rank
    residual = build_integral_system(spec).residual(U)
    store = ResultStore()
    if request.out_prefix is not None:
        store.write_solution(request.out_prefix, U)
    if request.log is not None:
        store.write_report(request.log, report)
    row = (
        request.preset,
        request.n,
        report.iterations,
        gmres_iterations,
        rank,
        residual,
    )
    write_csv(out, FREDHOLM_COLUMNS, [row])
    return 0


# ---------------------------------------------------------------------------
# frechet
# ---------------------------------------------------------------------------


class FrechetRequest(_SolverFlags):
    """``frechet --a A (--e E | --u U --v V) --domain D --function F ...``."""

    a: Path
    e: Optional[Path] = None
    u: Optional[Path] = None
    v: Optional[Path] = None
    domain: DomainFlag
    function: Literal["sign", "exp"] = "sign"
    out_prefix: str
    log: Optional[Path] = None

    @model_validator(mode="after")
    def _check_direction(self) -> "FrechetRequest":
        _right_hand_side(self.e, self.u, self.v, "e")
        if len(self.domain.intervals) != 2 and self.max_iterations is None:
            raise ValueError("one-interval domains need --max-iterations")
        return self


def run_frechet(request: FrechetRequest, out: TextIO) -> int:
    """L_f(A, E) through the block recurrence, written like ``solve``."""
    A = read_matrix(request.a)
    E = _factors_or_dense(request.e, request.u, request.v)
    config = request.solver_config()
    domain = request.domain
    rho = sign_rate(domain).rho if len(domain.intervals) == 2 else None
    if rho is None:
        k = config.max_iterations
    else:
        k = plan_iterations("sign", rho, A.shape[0], A.shape[0], config)
    spec = WeightSpec.for_domain(domain)
    table = recurrence_for(spec, k)
    common = {
        "m": config.contour_nodes,
        "radius_factor": config.radius_factor,
        "adaptive": config.adaptive_contour,
        "cap": config.contour_nodes_cap,
    }
    if request.function == "sign":
        if rho is None:
            raise UsageError("the sign function needs a two-interval domain")
        coeffs = sign_coeffs_circles(spec, table, k, **common)
    else:
        coeffs = general_f_coeffs(np.exp, spec, table, k, rho=rho, **common)
    L, report = frechet(A, E, coeffs, table, config, rho=rho)
    store = ResultStore()
    store.write_solution(request.out_prefix, L)
    if request.log is not None:
        store.write_report(request.log, report)
    else:
        report.write_csv(out)
    return 0


# ---------------------------------------------------------------------------
# grid-g and verify
# ---------------------------------------------------------------------------


class GridRequest(_Request):
    """``grid-g --domain D --window a,b,c,d [--resolution nx,ny]``."""

    domain: DomainFlag
    window: Annotated[tuple[float, float, float, float], BeforeValidator(_window)]
    resolution: Annotated[tuple[int, int], BeforeValidator(_resolution)] = (101, 101)

    @model_validator(mode="after")
    def _check_grid(self) -> "GridRequest":
        re_min, re_max, im_min, im_max = self.window
        if not (re_min < re_max and im_min < im_max):
            raise ValueError("the window must satisfy re_min < re_max, im_min < im_max")
        if min(self.resolution) < 1:
            raise ValueError("the resolution must be positive")
        return self


def run_grid(request: GridRequest, out: TextIO) -> int:
    """e^{re 𝔤} on a grid, one row per point."""
    re_axis, im_axis, values = g_grid(
        request.domain, request.window, request.resolution
    )
    rows = [
        (x, y, values[i, j])
        for i, y in enumerate(im_axis)
        for j, x in enumerate(re_axis)
    ]
    write_csv(out, GRID_COLUMNS, rows)
    return 0


class VerifyRequest(_Request):
    """``verify [--suite S] [--seed N]``; all suites when none is named."""

    suite: Optional[Literal["oracles", "solvers", "coeffs", "rates"]] = None
    seed: int = Config.DEFAULT_SEED


def run_verify(request: VerifyRequest, out: TextIO) -> int:
    names = [request.suite] if request.suite else list(SUITES)
    results = [run_suite(name, request.seed) for name in names]
    write_csv(out, VERIFY_COLUMNS, [row for r in results for row in r.to_rows()])
    return 0 if all(r.passed for r in results) else 1


Handler = Callable[..., int]

COMMANDS: dict[str, tuple[type[BaseModel], Handler]] = {
    "rates": (RatesRequest, run_rates),
    "coeffs": (CoeffsRequest, run_coeffs),
    "solve": (SolveRequest, run_solve),
    "bench": (BenchRequest, run_bench),
    "fredholm": (FredholmRequest, run_fredholm),
    "frechet": (FrechetRequest, run_frechet),
    "grid-g": (GridRequest, run_grid),
    "verify": (VerifyRequest, run_verify),
}
