"""QR/LQ/SVD recompression of factored matrices."""

import numpy as np

from akhsylv.core.linalg import lq, qr, svd
from akhsylv.solvers.base import LowRankPair

__all__ = ["compress", "numerical_rank", "truncate"]


def compress(J: np.ndarray, K: np.ndarray, eps: float) -> LowRankPair:
    """Recompress J @ K, dropping σ_j with σ_j² / Σσ² < eps.

    QR of J and LQ of K reduce the problem to the SVD of the small core R·L.
    The kept singular values are split evenly between the two factors, and
    ‖J̃K̃ − JK‖_F² ≤ eps·p·‖JK‖_F² holds by construction.

    Args:
    ----
        J: (m, p) left factor.
        K: (p, n) right factor.
        eps: Relative squared cutoff; 0 keeps every singular value.

    Returns:
    -------
        A :class:`LowRankPair` whose rank is the number of kept values.

    """
    if eps < 0.0:
        raise ValueError(f"compression tolerance must be >= 0, got {eps}")
    rows, cols = J.shape[0], K.shape[1]
    if J.shape[1] == 0:
        return LowRankPair.empty(rows, cols)
    q_j, r = qr(J)
    l, q_k = lq(K)
    u, s, vh = svd(r @ l)
    energy = s * s
    total = float(energy.sum())
    if total == 0.0:
        return LowRankPair.empty(rows, cols)
    keep = int(np.count_nonzero(energy >= eps * total))
    root = np.sqrt(s[:keep])
    return LowRankPair(q_j @ (u[:, :keep] * root), (root[:, None] * vh[:keep]) @ q_k)


def truncate(J: np.ndarray, K: np.ndarray, rank_tol: float) -> LowRankPair:
    """Numerical-rank truncation: keep σ_j > rank_tol·‖JK‖_F.

    This is the cutoff of the solvers' low-rank paths; the dropped part has
    Frobenius norm at most rank_tol·√p·‖JK‖_F.
    """
    if rank_tol < 0.0:
        raise ValueError(f"rank tolerance must be >= 0, got {rank_tol}")
    return compress(J, K, rank_tol * rank_tol)


def numerical_rank(matrix: np.ndarray, rank_tol: float) -> int:
    """Count of σ_j > rank_tol·‖matrix‖_F, the rank :func:`truncate` keeps."""
    s = np.linalg.svd(np.asarray(matrix, dtype=np.float64), compute_uv=False)
    total = float(np.sqrt(np.sum(s * s)))
    if total == 0.0:
        return 0
    return int(np.count_nonzero(s >= rank_tol * total))
