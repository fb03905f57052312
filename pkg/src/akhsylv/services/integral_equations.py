"""Fredholm integral equations on [−1, 1]² solved through Method 2.

Gauss-Legendre collocation of

    2u(x, y) + ∫K1(x, s)u(s, y)ds + ∫K2(y, t)u(x, t)dt
        [+ ∫∫K3(x, s)u(s, t)K4(y, t)ds dt] = Σ f_ℓ(x)g_ℓ(y)

gives (I + K1)U + U(I + K2) [+ K3 U K4ᵀ] = Σ f_ℓ g_ℓᵀ, with every matrix
entry scaled by √(w_j w_k). The plain equation is the Sylvester problem
XA − BX = C with A = I + K2, B = −(I + K1). The extended one is solved by
GMRES on U + T(K3 U K4ᵀ) = T(C), where T is a fixed-degree Method 2 solve.
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass

import numpy as np
import scipy.linalg
from pydantic import BaseModel, ConfigDict, Field, model_validator

from akhsylv.config import SolverConfig
from akhsylv.core.cutdomain import Interval
from akhsylv.core.linalg import gauss_legendre, gmres
from akhsylv.exceptions import AccuracyError, DomainError
from akhsylv.solvers.base import LowRankPair, SylvesterProblem
from akhsylv.solvers.data import (
    inverse_data,
    inverse_domain_rho,
    operator_interval,
)
from akhsylv.solvers.inverse import InverseSolver, solve_inverse_dense
from akhsylv.solvers.report import ConvergenceReport
from akhsylv.solvers.stopping import plan_iterations
from akhsylv.utils.logger import get_logger

__all__ = [
    "FredholmSpec",
    "IntegralSystem",
    "GeneralizedResult",
    "PRESETS",
    "preset",
    "build_integral_system",
    "solve_fredholm",
    "solve_generalized",
]

logger = get_logger(__name__)

Kernel = Callable[[np.ndarray, np.ndarray], np.ndarray]
Factor = Callable[[np.ndarray], np.ndarray]

GMRES_TOL = 1e-10
RAYLEIGH_SLACK = 1e-8


class FredholmSpec(BaseModel):
    """Kernels, right-hand side factors and grid of one integral equation.

    Args:
    ----
        kernel1: Symmetric K1(x, s) acting on the first variable.
        kernel2: Symmetric K2(y, t) acting on the second variable.
        kernel3: Optional K3 of the coupled term.
        kernel4: Optional K4 of the coupled term.
        f_factors: f_ℓ of the right-hand side.
        g_factors: g_ℓ of the right-hand side.
        n: Gauss-Legendre grid size.
        delta: Lower margin δ; eigenvalues of I + K1,2 must exceed it.

    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    kernel1: Kernel
    kernel2: Kernel
    kernel3: Kernel | None = None
    kernel4: Kernel | None = None
    f_factors: tuple[Factor, ...]
    g_factors: tuple[Factor, ...]
    n: int = Field(ge=2)
    delta: float = Field(gt=0.0)

    @model_validator(mode="after")
    def _check_factors(self) -> "FredholmSpec":
        if not self.f_factors or len(self.f_factors) != len(self.g_factors):
            raise ValueError("need r >= 1 matching pairs of f and g factors")
        if (self.kernel3 is None) != (self.kernel4 is None):
            raise ValueError("the coupled term needs both kernel3 and kernel4")
        return self

    @property
    def generalized(self) -> bool:
        return self.kernel3 is not None


@dataclass(frozen=True)
class IntegralSystem:
    """Collocated matrices of a :class:`FredholmSpec`."""

    problem: SylvesterProblem
    K1: np.ndarray
    K2: np.ndarray
    K3: np.ndarray | None
    K4: np.ndarray | None
    nodes: np.ndarray
    weights: np.ndarray

    def residual(self, U: np.ndarray | LowRankPair) -> float:
        """‖(I+K1)U + U(I+K2) [+ K3 U K4ᵀ] − C‖_F / ‖C‖_F."""
        dense = U.dense() if isinstance(U, LowRankPair) else U
        lhs = dense + self.K1 @ dense + dense + dense @ self.K2
        if self.K3 is not None:
            lhs = lhs + self.K3 @ dense @ self.K4.T
        rhs = self.problem.rhs()
        return float(np.linalg.norm(lhs - rhs) / (np.linalg.norm(rhs) or 1.0))


@dataclass(frozen=True)
class GeneralizedResult:
    """Solution of the coupled equation and the GMRES trace."""

    U: np.ndarray
    gmres_iterations: int
    residual_history: list[float]
    inner_report: ConvergenceReport


# ---------------------------------------------------------------------------
# Presets
# ---------------------------------------------------------------------------


def _exp_abs(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    return np.exp(-2.0 * np.abs(x - y))


def _gauss(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    return np.exp(-((x - y) ** 2))


PRESETS: dict[str, dict] = {
    "exp-abs": {
        "kernel1": _exp_abs,
        "kernel2": _exp_abs,
        "f_factors": (lambda x: np.cos(4.0 * x) / (1.04 - x * x),),
        "g_factors": (lambda x: np.sin(20.0 * x),),
    },
    "exp-abs-mod": {
        "kernel1": _exp_abs,
        "kernel2": _exp_abs,
        "kernel3": lambda x, y: np.cos(20.0 * x) * np.exp(y),
        "kernel4": lambda x, y: np.cosh(x) * np.sinh(y),
        "f_factors": (lambda x: x * x,),
        "g_factors": (lambda x: -np.exp(x),),
    },
    "gauss": {
        "kernel1": _gauss,
        "kernel2": _gauss,
        "kernel3": lambda x, y: y / np.cosh(x) ** 2,
        "kernel4": lambda x, y: np.exp(x - y),
        "f_factors": (lambda x: 1.0 / (x**4 + 2.0),),
        "g_factors": (lambda x: -np.sin(10.0 * x),),
    },
}


def preset(name: str, n: int, delta: float = 0.9) -> FredholmSpec:
    """Named kernel set at grid size ``n``.

    Both kernels are positive definite, so any δ < 1 is valid.
    """
    if name not in PRESETS:
        raise KeyError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}")
    return FredholmSpec(n=n, delta=delta, **PRESETS[name])


# ---------------------------------------------------------------------------
# Assembly and solves
# ---------------------------------------------------------------------------


def _kernel_matrix(kernel: Kernel, x: np.ndarray, root_w: np.ndarray) -> np.ndarray:
    return root_w[:, None] * kernel(x[:, None], x[None, :]) * root_w[None, :]


def _check_margin(matrix: np.ndarray, delta: float, name: str) -> None:
    """Compare the smallest Rayleigh quotient of I + K with δ."""
    smallest = float(
        scipy.linalg.eigh(matrix, eigvals_only=True, subset_by_index=[0, 0])[0]
    )
    if smallest < delta * (1.0 - RAYLEIGH_SLACK):
        raise DomainError(
            f"I + {name} has a Rayleigh quotient {smallest:.6g} below delta = {delta}"
        )


def build_integral_system(spec: FredholmSpec) -> IntegralSystem:
    """Collocate ``spec`` into XA − BX = C with low-rank C = F·Gᵀ."""
    x, w = gauss_legendre(spec.n)
    root_w = np.sqrt(w)
    eye = np.eye(spec.n)
    K1 = _kernel_matrix(spec.kernel1, x, root_w)
    K2 = _kernel_matrix(spec.kernel2, x, root_w)
    A, B = eye + K2, -(eye + K1)
    _check_margin(eye + K1, spec.delta, "K1")
    _check_margin(A, spec.delta, "K2")
    F = np.column_stack([root_w * f(x) for f in spec.f_factors])
    G = np.column_stack([root_w * g(x) for g in spec.g_factors])
    problem = SylvesterProblem(
        A=A,
        B=B,
        U=F,
        V=G.T,
        domain_A=Interval(lo=spec.delta, hi=1.0 + np.linalg.norm(K2)),
        domain_B=Interval(lo=-(1.0 + np.linalg.norm(K1)), hi=-spec.delta),
    )
    K3 = K4 = None
    if spec.generalized:
        K3 = _kernel_matrix(spec.kernel3, x, root_w)
        K4 = _kernel_matrix(spec.kernel4, x, root_w)
    return IntegralSystem(problem, K1, K2, K3, K4, x, w)


def solve_fredholm(
    spec: FredholmSpec, config: SolverConfig | None = None
) -> tuple[LowRankPair, ConvergenceReport]:
    """Low-rank Method 2 on the collocated equation (coupled term ignored)."""
    system = build_integral_system(spec)
    U, report = InverseSolver(config).solve(system.problem)
    logger.info(
        "Fredholm solve finished",
        extra={"iterations": report.iterations, "rank_wz": U.rank},
    )
    return U, report


def solve_generalized(
    spec: FredholmSpec, config: SolverConfig | None = None
) -> GeneralizedResult:
    """Matrix-free GMRES on U + T(K3 U K4ᵀ) = T(C)."""
    config = config or SolverConfig()
    system = build_integral_system(spec)
    problem = system.problem
    domain = operator_interval(*problem.require_domains())
    rho = inverse_domain_rho(domain)
    k = plan_iterations("inverse", rho, spec.n, spec.n, config)
    fixed = config.model_copy(update={"max_iterations": k})
    data = inverse_data(domain, k)
    shape = (spec.n, spec.n)

    def solve_t(rhs: np.ndarray) -> tuple[np.ndarray, ConvergenceReport]:
        inner = SylvesterProblem(A=problem.A, B=problem.B, C=rhs)
        return solve_inverse_dense(inner, data, fixed)

    t_rhs, report = solve_t(problem.rhs())
    if not spec.generalized:
        return GeneralizedResult(t_rhs, 0, [], report)

    def apply(vec: np.ndarray) -> np.ndarray:
        Y = vec.reshape(shape)
        return (Y + solve_t(system.K3 @ Y @ system.K4.T)[0]).ravel()

    result = gmres(apply, t_rhs.ravel(), tol=GMRES_TOL)
    if not result.converged:
        raise AccuracyError(
            f"GMRES stagnated after {result.iterations} iterations "
            f"at relative residual {result.residual_history[-1]:.3g}"
        )
    logger.info(
        "Generalized solve finished",
        extra={
            "iterations": result.iterations,
            "errors": result.residual_history[-1],
        },
    )
    return GeneralizedResult(
        result.solution.reshape(shape),
        result.iterations,
        result.residual_history,
        report,
    )
