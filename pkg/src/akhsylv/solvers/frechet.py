"""Fréchet derivatives L_f(A, E) from the block identity.

f([[A, 0], [E, A]]) = [[f(A), 0], [L_f(A, E), f(A)]], so the lower-left
block recurrence of Method 1 with B = A and C = E yields L_f for any series
of f. Only the accumulation weight changes from α_k/2 to α_k.
"""

from __future__ import annotations

import numpy as np

from akhsylv.config import SolverConfig
from akhsylv.core.akhiezer import CoefficientStream, RecurrenceTable
from akhsylv.exceptions import DimensionError
from akhsylv.solvers.base import LowRankPair, Solution
from akhsylv.solvers.report import ConvergenceReport
from akhsylv.solvers.sign import Observer, block_series_dense, block_series_lowrank
from akhsylv.solvers.stopping import error_constant, plan_iterations
from akhsylv.utils.logger import get_logger

__all__ = ["frechet"]

logger = get_logger(__name__)


def _iterations(
    n: int,
    coeffs: CoefficientStream,
    table: RecurrenceTable,
    config: SolverConfig,
    rho: float | None,
) -> int:
    if config.max_iterations is not None:
        k = config.max_iterations
    elif rho is not None:
        k = plan_iterations("sign", rho, n, n, config)
    else:
        raise ValueError("a rate base rho or max_iterations is needed to stop")
    available = table.count if coeffs.extend else min(table.count, len(coeffs))
    if k > available:
        logger.warning(
            "Series data is shorter than the planned iteration count",
            extra={"iterations": available},
        )
        k = available
    return k


def frechet(
    A: np.ndarray,
    E: np.ndarray | LowRankPair,
    coeffs: CoefficientStream,
    table: RecurrenceTable,
    config: SolverConfig | None = None,
    *,
    rho: float | None = None,
    observer: Observer | None = None,
) -> tuple[Solution, ConvergenceReport]:
    """Approximate L_f(A, E) with the series of f given by ``coeffs``.

    Args:
    ----
        A: (n, n) matrix with spectrum on or near Σ.
        E: Dense (n, n) direction, or its factors as a :class:`LowRankPair`.
        coeffs: Series coefficients of f on Σ.
        table: Recurrence table of Σ.
        config: Stopping and compression settings.
        rho: Rate base for the stopping rule; defaults to ``coeffs.rho``.
        observer: Called with (iteration, current iterate).

    Returns:
    -------
        L_f(A, E), dense or factored like ``E``, and the report.

    """
    config = config or SolverConfig()
    A = np.asarray(A, dtype=np.float64)
    n = A.shape[0]
    if A.ndim != 2 or A.shape[1] != n:
        raise DimensionError(f"A must be square, got shape {A.shape}")
    if E.shape != (n, n):
        raise DimensionError(f"E must be {n}x{n}, got {E.shape}")
    rho = rho if rho is not None else coeffs.rho
    k = _iterations(n, coeffs, table, config, rho)
    if rho is None:
        config = config.model_copy(update={"weighted_compression": False})
    report = ConvergenceReport("frechet", rho if rho is not None else float("nan"), k)
    common = {
        "weight": 1.0,
        "bound_constant": error_constant("sign", n, n),
        "report": report,
        "observer": observer,
    }
    if isinstance(E, LowRankPair):
        result = block_series_lowrank(
            A, A, E.W, E.Z, table, coeffs.take(k), config=config, **common
        )
    else:
        result = block_series_dense(
            A, A, np.asarray(E, dtype=np.float64), table, coeffs.take(k), **common
        )
    logger.info(
        "Frechet derivative finished",
        extra={
            "method": "frechet",
            "iterations": report.iterations,
            "elapsed_ms": report.elapsed_ms,
        },
    )
    return result, report
