"""Per-iteration convergence reports."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import TextIO

from akhsylv.utils.helpers import write_csv

__all__ = ["IterationRecord", "ConvergenceReport", "REPORT_COLUMNS"]

REPORT_COLUMNS = ("iter", "bound", "rank_jk", "rank_wz", "stored_entries", "seconds")


@dataclass(frozen=True)
class IterationRecord:
    """State after one iteration; ``iteration`` counts series terms summed."""

    iteration: int
    bound: float
    rank_jk: int | None
    rank_wz: int | None
    stored_entries: int
    seconds: float


@dataclass
class ConvergenceReport:
    """Records of one solve, built only by the owning solver."""

    method: str
    rho: float
    planned_iterations: int
    nu: float | None = None
    records: list[IterationRecord] = field(default_factory=list)
    _started: float = field(default_factory=time.perf_counter, repr=False)

    def add(
        self,
        bound: float,
        stored_entries: int,
        *,
        rank_jk: int | None = None,
        rank_wz: int | None = None,
    ) -> IterationRecord:
        record = IterationRecord(
            iteration=len(self.records) + 1,
            bound=bound,
            rank_jk=rank_jk,
            rank_wz=rank_wz,
            stored_entries=stored_entries,
            seconds=time.perf_counter() - self._started,
        )
        self.records.append(record)
        return record

    @property
    def iterations(self) -> int:
        return len(self.records)

    @property
    def elapsed_ms(self) -> float:
        return 1000.0 * (self.records[-1].seconds if self.records else 0.0)

    @property
    def max_rank_jk(self) -> int:
        return max((r.rank_jk or 0 for r in self.records), default=0)

    @property
    def max_rank_wz(self) -> int:
        return max((r.rank_wz or 0 for r in self.records), default=0)

    @property
    def max_stored_entries(self) -> int:
        return max((r.stored_entries for r in self.records), default=0)

    def to_rows(self) -> list[tuple]:
        return [
            (r.iteration, r.bound, r.rank_jk, r.rank_wz, r.stored_entries, r.seconds)
            for r in self.records
        ]

    def write_csv(self, stream: TextIO) -> None:
        write_csv(stream, REPORT_COLUMNS, self.to_rows())
