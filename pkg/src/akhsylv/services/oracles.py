"""Brute-force references for checking the solvers.

Nothing in the solver hot paths calls into this module; tests, benchmarks
and the ``verify`` command do.
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from akhsylv.core.akhiezer import (
    RecurrenceTable,
    WeightSpec,
    poly_values,
    sigma_quadrature,
)
from akhsylv.core.cutdomain import Interval
from akhsylv.core.linalg import SpectrumSpec, random_factors, random_known_spectrum
from akhsylv.exceptions import AccuracyError, DimensionError, SingularDomainError
from akhsylv.solvers.base import SylvesterProblem
from akhsylv.utils.logger import get_logger

__all__ = [
    "KnownFactorization",
    "sylvester_eigen_oracle",
    "kron_lu_oracle",
    "daleckii_krein_oracle",
    "coeff_dense_oracle",
    "KRON_SIZE_LIMIT",
    "KnownProblem",
    "sample_spectrum",
    "known_problem",
]

logger = get_logger(__name__)

KRON_SIZE_LIMIT = 2000
ORTHOGONALITY_TOL = 1e-12
CLOSE_EIGENVALUES = 1e-8


@dataclass(frozen=True)
class KnownFactorization:
    """Symmetric matrix Q·diag(λ)·Qᵀ with its orthogonal factor kept."""

    Q: np.ndarray
    eigenvalues: np.ndarray

    def __post_init__(self) -> None:
        size = self.eigenvalues.size
        if self.Q.shape != (size, size):
            raise DimensionError(
                f"Q has shape {self.Q.shape} for {size} eigenvalues"
            )
        defect = np.linalg.norm(self.Q.T @ self.Q - np.eye(size))
        if defect > ORTHOGONALITY_TOL:
            raise AccuracyError(f"Q is not orthogonal: ‖QᵀQ − I‖_F = {defect:.3g}")

    @classmethod
    def random(cls, eigenvalues, seed: int) -> "KnownFactorization":
        """Seeded factorization with the given spectrum."""
        spec = SpectrumSpec(
            eigenvalues=tuple(float(v) for v in eigenvalues),
            orthogonal_factor_seed=seed,
        )
        _, q = random_known_spectrum(spec)
        return cls(q, np.asarray(spec.eigenvalues, dtype=np.float64))

    @property
    def size(self) -> int:
        return self.eigenvalues.size

    def matrix(self) -> np.ndarray:
        m = (self.Q * self.eigenvalues) @ self.Q.T
        return 0.5 * (m + m.T)

    def apply(self, f: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
        """f(M) = Q·diag(f(λ))·Qᵀ."""
        return (self.Q * f(self.eigenvalues)) @ self.Q.T


def sylvester_eigen_oracle(
    fact_A: KnownFactorization, fact_B: KnownFactorization, C: np.ndarray
) -> np.ndarray:
    """Solve XA − BX = C by entrywise division in the eigenbases."""
    if C.shape != (fact_B.size, fact_A.size):
        raise DimensionError(
            f"C must be {fact_B.size}x{fact_A.size}, got {C.shape}"
        )
    denominator = fact_A.eigenvalues[None, :] - fact_B.eigenvalues[:, None]
    if np.any(denominator == 0.0):
        raise SingularDomainError("A and B share an eigenvalue")
    rotated = fact_B.Q.T @ C @ fact_A.Q
    return fact_B.Q @ (rotated / denominator) @ fact_A.Q.T


def kron_lu_oracle(A: np.ndarray, B: np.ndarray, C: np.ndarray) -> np.ndarray:
    """Solve (Aᵀ ⊗ I − I ⊗ B)·vec(X) = vec(C) by dense LU.

    Raises:
    ------
        DimensionError: When n·m exceeds :data:`KRON_SIZE_LIMIT`.
        SingularDomainError: When the operator is numerically singular.

    """
    m, n = B.shape[0], A.shape[0]
    if C.shape != (m, n):
        raise DimensionError(f"C must be {m}x{n}, got {C.shape}")
    if m * n > KRON_SIZE_LIMIT:
        raise DimensionError(
            f"Kronecker oracle limited to n*m <= {KRON_SIZE_LIMIT}, got {m * n}"
        )
    operator = np.kron(A.T, np.eye(m)) - np.kron(np.eye(n), B)
    lu, piv = scipy.linalg.lu_factor(operator, check_finite=False)
    pivots = np.abs(np.diag(lu))
    if pivots.min(initial=np.inf) <= 1e-14 * max(pivots.max(initial=0.0), 1.0):
        raise SingularDomainError("the Sylvester operator is singular")
    vec = scipy.linalg.lu_solve((lu, piv), C.reshape(-1, order="F"))
    return vec.reshape((m, n), order="F")


def daleckii_krein_oracle(
    fact: KnownFactorization,
    E: np.ndarray,
    f: Callable[[np.ndarray], np.ndarray],
    f_prime: Callable[[np.ndarray], np.ndarray],
) -> np.ndarray:
    """L_f(A, E) = Q·(Φ ∘ QᵀEQ)·Qᵀ with divided differences Φ."""
    lam = fact.eigenvalues
    if E.shape != (lam.size, lam.size):
        raise DimensionError(f"E must be {lam.size}x{lam.size}, got {E.shape}")
    values = f(lam)
    slopes = f_prime(lam)
    gaps = lam[:, None] - lam[None, :]
    close = np.abs(gaps) < CLOSE_EIGENVALUES
    np.fill_diagonal(close, False)
    if close.any():
        logger.warning(
            "Nearly coincident eigenvalues in divided differences",
            extra={"errors": int(close.sum()) // 2},
        )
    same = np.abs(gaps) < CLOSE_EIGENVALUES
    with np.errstate(divide="ignore", invalid="ignore"):
        phi = (values[:, None] - values[None, :]) / gaps
    phi = np.where(same, 0.5 * (slopes[:, None] + slopes[None, :]), phi)
    return fact.Q @ (phi * (fact.Q.T @ E @ fact.Q)) @ fact.Q.T


def coeff_dense_oracle(
    spec: WeightSpec,
    table: RecurrenceTable,
    f: Callable[[np.ndarray], np.ndarray],
    j: int,
    *,
    nodes_per_interval: int | None = None,
) -> float:
    """α_j = ∫_Σ f p_j w by direct quadrature on Σ."""
    per_interval = nodes_per_interval or max(8 * (j + 1), 400)
    quad = sigma_quadrature(spec, per_interval)
    basis = poly_values(table, j + 1, quad.nodes)[j]
    return float(np.dot(quad.weights * basis, f(quad.nodes)))


# ---------------------------------------------------------------------------
# Known-solution test problems
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class KnownProblem:
    """Sylvester problem with symmetric A, B of known spectra and its solution."""

    problem: SylvesterProblem
    fact_A: KnownFactorization
    fact_B: KnownFactorization
    solution: np.ndarray


def sample_spectrum(interval: Interval, size: int, seed: int) -> np.ndarray:
    """Sorted uniform eigenvalues in ``interval``, endpoints included."""
    rng = np.random.default_rng(seed)
    values = rng.uniform(interval.lo, interval.hi, size)
    if size >= 2:
        values[:2] = interval.lo, interval.hi
    return np.sort(values)


def known_problem(
    n: int,
    m: int,
    domain_A: Interval,
    domain_B: Interval,
    *,
    rank: int = 2,
    seed: int = 0,
    low_rank: bool = True,
    eigs_A: np.ndarray | None = None,
    eigs_B: np.ndarray | None = None,
    attach_eigs: bool = False,
) -> KnownProblem:
    """Random orthogonal similarity of chosen spectra with a rank-``rank`` C.

    Eigenvalues default to uniform samples of the interval hints. Passing
    ``eigs_A`` or ``eigs_B`` places them anywhere, including off the hints.
    """
    lam_A = sample_spectrum(domain_A, n, seed + 3) if eigs_A is None else eigs_A
    lam_B = sample_spectrum(domain_B, m, seed + 4) if eigs_B is None else eigs_B
    fact_A = KnownFactorization.random(lam_A, seed)
    fact_B = KnownFactorization.random(lam_B, seed + 1)
    U, V = random_factors(m, rank, n, seed + 2)
    rhs = {"U": U, "V": V} if low_rank else {"C": U @ V}
    eigs = {"eigs_A": lam_A, "eigs_B": lam_B} if attach_eigs else {}
    problem = SylvesterProblem(
        A=fact_A.matrix(),
        B=fact_B.matrix(),
        domain_A=domain_A,
        domain_B=domain_B,
        **rhs,
        **eigs,
    )
    solution = sylvester_eigen_oracle(fact_A, fact_B, U @ V)
    return KnownProblem(problem, fact_A, fact_B, solution)
