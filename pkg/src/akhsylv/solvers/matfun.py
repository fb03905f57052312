"""Generic Akhiezer iteration for matrix functions."""

from collections.abc import Callable

import numpy as np

from akhsylv.core.akhiezer import CoefficientStream, RecurrenceTable, poly_matrices
from akhsylv.exceptions import DimensionError

__all__ = ["akhiezer_matfun"]


def akhiezer_matfun(
    M: np.ndarray,
    coeffs: CoefficientStream,
    table: RecurrenceTable,
    k: int,
    *,
    observer: Callable[[int, np.ndarray], None] | None = None,
) -> np.ndarray:
    """F_k = Σ_{j<k} α_j p_j(M) in a single pass over the matrix recurrence.

    ``observer(j + 1, F)`` sees the running sum after every term; it must
    copy ``F`` to keep it.
    """
    M = np.asarray(M, dtype=np.float64)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise DimensionError(f"matrix functions need a square matrix, got {M.shape}")
    if k > table.count:
        raise IndexError(f"table holds {table.count} pairs, asked for {k} terms")
    alpha = coeffs.take(k)
    total = np.zeros_like(M)
    for j, poly in zip(range(k), poly_matrices(table, M), strict=False):
        total += alpha[j] * poly
        if observer is not None:
            observer(j + 1, total)
    return total
