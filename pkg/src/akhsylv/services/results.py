"""Local output files of the CLI: solutions, reports and figure tables.

Solutions go out in matrix-text format (``P.x`` dense, ``P.w``/``P.z`` for
factors) and tables as versioned CSV.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from pathlib import Path

import numpy as np

from akhsylv.solvers.base import LowRankPair, Solution
from akhsylv.solvers.report import REPORT_COLUMNS, ConvergenceReport
from akhsylv.utils.helpers import write_csv, write_matrix
from akhsylv.utils.logger import get_logger

__all__ = ["ResultStore"]

logger = get_logger(__name__)


class ResultStore:
    """Writes solutions and tables below an output directory.

    Args:
    ----
        root: Directory that relative targets resolve against. Created on
            first write.

    """

    def __init__(self, root: str | Path = ".") -> None:
        """Remember the output directory."""
        self.root = Path(root)

    def _target(self, name: str | Path) -> Path:
        path = Path(name)
        target = path if path.is_absolute() else self.root / path
        target.parent.mkdir(parents=True, exist_ok=True)
        return target

    def write_solution(self, prefix: str | Path, solution: Solution) -> list[Path]:
        """Write a solution under ``prefix`` and return the files written.

        Args:
        ----
            prefix: Output prefix P.
            solution: Dense X or its :class:`LowRankPair` factors.

        Returns:
        -------
            ``[P.x]`` for dense input, ``[P.w, P.z]`` for factors.

        """
        if isinstance(solution, LowRankPair):
            parts = {".w": solution.W, ".z": solution.Z}
        else:
            parts = {".x": np.asarray(solution)}
        written = []
        for suffix, matrix in parts.items():
            target = self._target(f"{prefix}{suffix}")
            try:
                write_matrix(target, matrix)
            except OSError:
                logger.error("Could not write matrix", extra={"path": str(target)})
                raise
            logger.info("Wrote matrix", extra={"path": str(target)})
            written.append(target)
        return written

    def write_table(
        self,
        name: str | Path,
        columns: Sequence[str],
        rows: Iterable[Sequence[object]],
    ) -> Path:
        """Write one CSV table and return its path."""
        target = self._target(name)
        try:
            with target.open("w", encoding="utf-8", newline="") as stream:
                write_csv(stream, columns, rows)
        except OSError:
            logger.error("Could not write table", extra={"path": str(target)})
            raise
        logger.info("Wrote table", extra={"path": str(target)})
        return target

    def write_report(self, name: str | Path, report: ConvergenceReport) -> Path:
        return self.write_table(name, REPORT_COLUMNS, report.to_rows())
