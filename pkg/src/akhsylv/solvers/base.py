"""Problem and solution types shared by all Sylvester solvers.

This module also defines :class:`BaseSylvesterSolver`, the interface the CLI
uses to run either method without knowing which one it holds.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from akhsylv.config import SolverConfig
from akhsylv.core.cutdomain import Interval
from akhsylv.exceptions import DimensionError, DomainError
from akhsylv.solvers.report import ConvergenceReport

__all__ = ["SylvesterProblem", "LowRankPair", "BaseSylvesterSolver", "Solution"]


@dataclass(frozen=True)
class LowRankPair:
    """Factored matrix W @ Z with inner dimension ``rank``."""

    W: np.ndarray
    Z: np.ndarray

    def __post_init__(self) -> None:
        if self.W.ndim != 2 or self.Z.ndim != 2 or self.W.shape[1] != self.Z.shape[0]:
            raise DimensionError(
                f"factors {self.W.shape} and {self.Z.shape} do not chain"
            )

    @classmethod
    def empty(cls, rows: int, cols: int) -> "LowRankPair":
        return cls(np.zeros((rows, 0)), np.zeros((0, cols)))

    @property
    def rank(self) -> int:
        return self.W.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.W.shape[0], self.Z.shape[1]

    def dense(self) -> np.ndarray:
        return self.W @ self.Z


Solution = np.ndarray | LowRankPair


@dataclass(frozen=True)
class SylvesterProblem:
    """XA − BX = C with C dense or factored as U @ V.

    Args:
    ----
        A: (n, n) matrix acting from the right.
        B: (m, m) matrix acting from the left.
        C: Dense (m, n) right-hand side, or None when factors are given.
        U: (m, r) left factor of a low-rank right-hand side.
        V: (r, n) right factor of a low-rank right-hand side.
        domain_A: Interval known to contain σ(A).
        domain_B: Interval known to contain σ(B).
        eigs_A: Optional eigenvalue sample of A for divergence diagnostics.
        eigs_B: Optional eigenvalue sample of B.

    """

    A: np.ndarray
    B: np.ndarray
    C: np.ndarray | None = None
    U: np.ndarray | None = None
    V: np.ndarray | None = None
    domain_A: Interval | None = None
    domain_B: Interval | None = None
    eigs_A: np.ndarray | None = None
    eigs_B: np.ndarray | None = None

    def __post_init__(self) -> None:
        a, b = np.asarray(self.A), np.asarray(self.B)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise DimensionError(f"A must be square, got shape {a.shape}")
        if b.ndim != 2 or b.shape[0] != b.shape[1]:
            raise DimensionError(f"B must be square, got shape {b.shape}")
        m, n = b.shape[0], a.shape[0]
        if (self.C is None) == (self.U is None and self.V is None):
            raise DimensionError("give either a dense C or factors U and V")
        if self.C is not None and np.shape(self.C) != (m, n):
            raise DimensionError(f"C must be {m}x{n}, got {np.shape(self.C)}")
        if self.C is None:
            if self.U is None or self.V is None:
                raise DimensionError("low-rank right-hand sides need both U and V")
            u, v = np.shape(self.U), np.shape(self.V)
            if len(u) != 2 or len(v) != 2 or u[0] != m or v[1] != n or u[1] != v[0]:
                raise DimensionError(
                    f"U {u} and V {v} do not form an {m}x{n} right-hand side"
                )

    @property
    def n(self) -> int:
        return self.A.shape[0]

    @property
    def m(self) -> int:
        return self.B.shape[0]

    @property
    def is_low_rank(self) -> bool:
        return self.C is None

    def rhs(self) -> np.ndarray:
        """Dense right-hand side."""
        return self.C if self.C is not None else self.U @ self.V

    def require_domains(self) -> tuple[Interval, Interval]:
        if self.domain_A is None or self.domain_B is None:
            raise DomainError("spectral interval hints for A and B are required")
        return self.domain_A, self.domain_B

    def residual(self, X: Solution) -> float:
        """Relative Frobenius residual ‖XA − BX − C‖ / ‖C‖."""
        dense = X.dense() if isinstance(X, LowRankPair) else X
        rhs = self.rhs()
        scale = np.linalg.norm(rhs) or 1.0
        return float(np.linalg.norm(dense @ self.A - self.B @ dense - rhs) / scale)


class BaseSylvesterSolver(ABC):
    """Base class for the Akhiezer Sylvester solvers."""

    method: str

    def __init__(self, config: SolverConfig | None = None) -> None:
        """Store the solver configuration."""
        self.config = config or SolverConfig()

    @abstractmethod
    def solve(
        self,
        problem: SylvesterProblem,
        *,
        observer: Callable[[int, Solution], None] | None = None,
    ) -> tuple[Solution, ConvergenceReport]:
        """Solve a Sylvester problem.

        Args:
        ----
            problem: The equation and its spectral hints.
            observer: Called with (iteration, current iterate) after every
                update. Dense iterates are updated in place.

        Returns:
        -------
            The solution (dense or factored, matching the right-hand side)
            and the per-iteration report.

        """
