"""Dense linear-algebra kernels used by the solvers.

QR/LQ/SVD wrap LAPACK through :mod:`scipy.linalg` with canonical sign
conventions, Gauss-Legendre rules come from a Newton iteration on the
Legendre recurrence, and GMRES is a plain Arnoldi (modified Gram-Schmidt)
implementation with Givens rotations and no restarting.

All random data is drawn from :func:`numpy.random.default_rng` (PCG64), so a
seed reproduces matrices bit for bit.
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
import scipy.linalg
from pydantic import BaseModel, ConfigDict, field_validator

from akhsylv.exceptions import AccuracyError, DimensionError
from akhsylv.utils.logger import get_logger

__all__ = [
    "SpectrumSpec",
    "GmresResult",
    "qr",
    "lq",
    "svd",
    "gauss_legendre",
    "integrate",
    "gmres",
    "random_orthogonal",
    "random_known_spectrum",
    "random_factors",
]

logger = get_logger(__name__)

EPS_MACH = 2.0**-52
NEWTON_MAX_STEPS = 100
PANEL_NODES = 20
MAX_PANELS = 20000


class SpectrumSpec(BaseModel):
    """Eigenvalues of a symmetric test matrix and the seed of its eigenvectors."""

    model_config = ConfigDict(frozen=True)

    eigenvalues: tuple[float, ...]
    orthogonal_factor_seed: int = 0

    @field_validator("eigenvalues")
    @classmethod
    def _finite(cls, value: tuple[float, ...]) -> tuple[float, ...]:
        if not np.all(np.isfinite(value)):
            raise ValueError("eigenvalues must be finite")
        return value


# ---------------------------------------------------------------------------
# Factorizations
# ---------------------------------------------------------------------------


def qr(matrix: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Economic Householder QR with a nonnegative diagonal of R.

    Args:
    ----
        matrix: An (m, p) array; rank deficiency is allowed.

    Returns:
    -------
        Q of shape (m, min(m, p)) with orthonormal columns and upper
        triangular R of shape (min(m, p), p).

    """
    matrix = np.asarray(matrix, dtype=np.float64)
    rows, cols = matrix.shape
    if rows == 0 or cols == 0:
        inner = min(rows, cols)
        return np.zeros((rows, inner)), np.zeros((inner, cols))
    q, r = scipy.linalg.qr(matrix, mode="economic", check_finite=False)
    signs = np.sign(np.diag(r))
    signs[signs == 0] = 1.0
    return q * signs, r * signs[:, None]


def lq(matrix: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """LQ factorization ``matrix = L @ Q`` via QR of the transpose."""
    q_t, r_t = qr(np.asarray(matrix).T)
    return r_t.T, q_t.T


def svd(matrix: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Thin SVD ``matrix = U @ diag(S) @ Vh`` with nonincreasing ``S``.

    ``gesdd`` is tried first; ``gesvd`` is the fallback when the
    divide-and-conquer driver fails to converge.
    """
    matrix = np.asarray(matrix, dtype=np.float64)
    rows, cols = matrix.shape
    if rows == 0 or cols == 0:
        inner = min(rows, cols)
        return np.zeros((rows, inner)), np.zeros(inner), np.zeros((inner, cols))
    for driver in ("gesdd", "gesvd"):
        try:
            return scipy.linalg.svd(
                matrix, full_matrices=False, lapack_driver=driver, check_finite=False
            )
        except np.linalg.LinAlgError:
            logger.warning("SVD driver failed to converge", extra={"method": driver})
    raise AccuracyError(f"SVD did not converge for a {rows}x{cols} matrix")


# ---------------------------------------------------------------------------
# Quadrature
# ---------------------------------------------------------------------------


@lru_cache(maxsize=64)
def _gauss_legendre_cached(n: int) -> tuple[np.ndarray, np.ndarray]:
    def legendre_pair(x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        p_prev, p = np.ones_like(x), x.copy()
        for k in range(2, n + 1):
            p_prev, p = p, ((2 * k - 1) * x * p - (k - 1) * p_prev) / k
        return p, n * (x * p - p_prev) / (x * x - 1.0)

    i = np.arange(1, n + 1)
    x = np.cos(np.pi * (i - 0.25) / (n + 0.5))
    for _ in range(NEWTON_MAX_STEPS):
        p, dp = legendre_pair(x)
        step = p / dp
        x = x - step
        if np.max(np.abs(step)) <= 2 * EPS_MACH:
            break
    _, dp = legendre_pair(x)
    w = 2.0 / ((1.0 - x * x) * dp * dp)
    order = np.argsort(x)
    nodes, weights = x[order], w[order]
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def gauss_legendre(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes (ascending) and weights on [-1, 1].

    Args:
    ----
        n: Number of nodes, at least 1.

    Returns:
    -------
        Read-only arrays ``(nodes, weights)``; weights are positive and sum to 2.

    """
    if n < 1:
        raise ValueError(f"Gauss-Legendre needs n >= 1, got {n}")
    return _gauss_legendre_cached(int(n))


def integrate(
    func: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    *,
    rtol: float = 1e-12,
    atol: float = 1e-300,
) -> complex | float:
    """Adaptive composite Gauss-Legendre integration of ``func`` over [a, b].

    Panels are halved until the one-panel and two-half-panel estimates agree
    to ``rtol`` relative to the running total. ``func`` is vectorized and may
    return complex values.
    """
    nodes, weights = gauss_legendre(PANEL_NODES)

    def panel(lo: float, hi: float):
        half = 0.5 * (hi - lo)
        mid = 0.5 * (hi + lo)
        return half * np.dot(weights, func(mid + half * nodes))

    whole = panel(a, b)
    scale = abs(whole)
    total = 0.0
    stack = [(a, b, whole)]
    panels = 0
    while stack:
        lo, hi, estimate = stack.pop()
        mid = 0.5 * (lo + hi)
        left, right = panel(lo, mid), panel(mid, hi)
        refined = left + right
        panels += 1
        scale = max(scale, abs(refined))
        if abs(refined - estimate) <= max(rtol * scale, atol) or hi - lo < 1e-15 * (
            abs(b - a)
        ):
            total += refined
            continue
        if panels > MAX_PANELS:
            raise AccuracyError(
                f"adaptive quadrature on [{a}, {b}] exceeded {MAX_PANELS} panels"
            )
        stack.append((mid, hi, right))
        stack.append((lo, mid, left))
    return total


# ---------------------------------------------------------------------------
# GMRES
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GmresResult:
    """Outcome of a GMRES solve."""

    solution: np.ndarray
    iterations: int
    residual_history: list[float] = field(default_factory=list)
    converged: bool = False


def gmres(
    apply: Callable[[np.ndarray], np.ndarray],
    rhs: np.ndarray,
    *,
    tol: float = 1e-10,
    max_iter: int | None = None,
) -> GmresResult:
    """Solve ``apply(x) = rhs`` with unrestarted GMRES from a zero guess.

    Args:
    ----
        apply: Matrix-free linear operator acting on 1-D vectors.
        rhs: Right-hand side vector.
        tol: Target relative residual ``|r_k| / |rhs|``.
        max_iter: Iteration cap; defaults to ``min(len(rhs), 200)``.

    Returns:
    -------
        A :class:`GmresResult` with the relative residual history
        (entry 0 is 1.0) and whether ``tol`` was met.

    """
    b = np.asarray(rhs, dtype=np.float64).ravel()
    size = b.size
    max_iter = min(size, 200) if max_iter is None else min(size, max_iter)
    beta = float(np.linalg.norm(b))
    if beta == 0.0:
        return GmresResult(np.zeros_like(b), 0, [0.0], True)

    basis = [b / beta]
    h = np.zeros((max_iter + 1, max_iter))
    cs = np.zeros(max_iter)
    sn = np.zeros(max_iter)
    gamma = np.zeros(max_iter + 1)
    gamma[0] = beta
    history = [1.0]
    converged = False
    j = -1

    for j in range(max_iter):
        w = np.asarray(apply(basis[j]), dtype=np.float64).ravel()
        if w.size != size:
            raise DimensionError(
                f"operator returned {w.size} entries for a {size}-vector"
            )
        for i in range(j + 1):
            h[i, j] = np.dot(basis[i], w)
            w = w - h[i, j] * basis[i]
        h[j + 1, j] = np.linalg.norm(w)

        for i in range(j):
            hij = cs[i] * h[i, j] + sn[i] * h[i + 1, j]
            h[i + 1, j] = -sn[i] * h[i, j] + cs[i] * h[i + 1, j]
            h[i, j] = hij
        denom = np.hypot(h[j, j], h[j + 1, j])
        breakdown = h[j + 1, j] <= 1e-14 * max(denom, 1.0)
        if denom == 0.0:
            raise AccuracyError("GMRES hit a singular Hessenberg column")
        cs[j] = h[j, j] / denom
        sn[j] = h[j + 1, j] / denom
        h[j, j] = denom
        h[j + 1, j] = 0.0
        gamma[j + 1] = -sn[j] * gamma[j]
        gamma[j] = cs[j] * gamma[j]

        history.append(abs(gamma[j + 1]) / beta)
        if history[-1] <= tol or breakdown:
            converged = True
            break
        basis.append(w / np.linalg.norm(w))

    k = j + 1
    y = scipy.linalg.solve_triangular(h[:k, :k], gamma[:k], check_finite=False)
    x = np.zeros_like(b)
    for i in range(k):
        x += y[i] * basis[i]
    if not converged:
        logger.warning(
            "GMRES stopped before reaching tolerance",
            extra={"iterations": k, "tolerance": tol},
        )
    return GmresResult(x, k, history, converged)


# ---------------------------------------------------------------------------
# Seeded random matrices
# ---------------------------------------------------------------------------


def random_orthogonal(size: int, seed: int) -> np.ndarray:
    """Haar-distributed orthogonal matrix from the QR of a seeded Gaussian."""
    rng = np.random.default_rng(seed)
    q, _ = qr(rng.standard_normal((size, size)))
    return q


def random_known_spectrum(spec: SpectrumSpec) -> tuple[np.ndarray, np.ndarray]:
    """Symmetric ``M = Q diag(λ) Qᵀ`` with seeded orthogonal ``Q``.

    Returns
    -------
        ``(M, Q)``.

    """
    eigenvalues = np.asarray(spec.eigenvalues, dtype=np.float64)
    q = random_orthogonal(eigenvalues.size, spec.orthogonal_factor_seed)
    matrix = (q * eigenvalues) @ q.T
    return 0.5 * (matrix + matrix.T), q


def random_factors(
    rows: int, rank: int, cols: int, seed: int
) -> tuple[np.ndarray, np.ndarray]:
    """Standard-normal factors ``U`` (rows x rank) and ``V`` (rank x cols)."""
    rng = np.random.default_rng(seed)
    return rng.standard_normal((rows, rank)), rng.standard_normal((rank, cols))
