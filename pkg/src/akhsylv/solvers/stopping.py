"""Stopping rules, a priori error bounds and divergence checks."""

from __future__ import annotations

import math
from collections.abc import Iterable
from typing import Literal

from akhsylv.config import SolverConfig
from akhsylv.core.cutdomain import CutDomain, nu
from akhsylv.exceptions import NonConvergenceError
from akhsylv.utils.logger import get_logger

__all__ = [
    "EPS_MACH",
    "error_constant",
    "iterations_for_tolerance",
    "predicted_bound",
    "check_divergence",
    "plan_iterations",
]

logger = get_logger(__name__)

EPS_MACH = 2.0**-52
HARD_MAX_ITERATIONS = 20000

Method = Literal["sign", "inverse"]


def error_constant(method: Method, n: int, m: int) -> float:
    """Hypothesized constant D: 10(n+m) for sign, 20(n+m) for inverse."""
    if method == "sign":
        return 10.0 * (n + m)
    if method == "inverse":
        return 20.0 * (n + m)
    raise ValueError(f"unknown method {method!r}")


def iterations_for_tolerance(
    method: Method,
    rho: float,
    eps: float,
    n: int,
    m: int,
    *,
    hard_max: int = HARD_MAX_ITERATIONS,
) -> int:
    """Iterations until D·ρ^{-k}/(1−ρ⁻¹) ≤ ε, capped at rounding saturation.

    The result is clamped to [1, hard_max].
    """
    if not rho > 1.0:
        raise NonConvergenceError(f"rate base rho = {rho!r} must exceed 1")
    log_rho = math.log(rho)
    constant = error_constant(method, n, m)
    tolerance_term = -math.log(eps * (1.0 - 1.0 / rho) / constant) / log_rho
    saturation_term = -math.log(EPS_MACH / 5.0) / log_rho
    k = math.ceil(min(tolerance_term, saturation_term))
    return min(max(k, 1), hard_max)


def predicted_bound(constant: float, rho: float, k: int) -> float:
    """constant·ρ^{-k}/(1−ρ⁻¹)."""
    return constant * rho**-k / (1.0 - 1.0 / rho)


def check_divergence(
    domain: CutDomain, eigenvalues: Iterable[complex], z_ref: complex
) -> float:
    """Return ν(z_ref); raise when the series cannot converge (ν ≥ 0)."""
    value = nu(domain, eigenvalues, z_ref)
    if value >= 0.0:
        logger.warning(
            "Spectrum lies outside the convergence region", extra={"nu": value}
        )
        raise NonConvergenceError(
            f"nu = {value:.6g} >= 0: eigenvalues lie outside the level set of z_ref"
        )
    return value


def plan_iterations(
    method: Method, rho: float, n: int, m: int, config: SolverConfig
) -> int:
    """Fixed override from ``config`` or the tolerance-driven count."""
    if config.max_iterations is not None:
        return config.max_iterations
    return iterations_for_tolerance(
        method, rho, config.tolerance, n, m, hard_max=config.hard_max_iterations
    )
