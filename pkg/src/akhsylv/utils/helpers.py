"""Helper functions for matrix-text and CSV files."""

from collections.abc import Iterable, Sequence
from pathlib import Path
from typing import TextIO

import numpy as np

from akhsylv.config import Config
from akhsylv.exceptions import MatrixFormatError

__all__ = ["format_float", "read_matrix", "write_matrix", "write_csv"]


def format_float(value: float | None) -> str:
    """Format a float with 17 significant digits; ``None`` becomes empty."""
    if value is None:
        return ""
    return format(float(value), Config.FLOAT_FORMAT)


def read_matrix(path: str | Path) -> np.ndarray:
    """Read a matrix-text file: "rows cols" then row-major values.

    Args:
    ----
        path: File to read.

    Returns:
    -------
        A float64 array of shape (rows, cols).

    """
    tokens = Path(path).read_text(encoding="utf-8").split()
    if len(tokens) < 2:
        raise MatrixFormatError(f"{path}: missing 'rows cols' header")
    try:
        rows, cols = int(tokens[0]), int(tokens[1])
        values = np.array([float(t) for t in tokens[2:]], dtype=np.float64)
    except ValueError as exc:
        raise MatrixFormatError(f"{path}: non-numeric entry ({exc})") from exc
    if rows < 0 or cols < 0 or values.size != rows * cols:
        raise MatrixFormatError(
            f"{path}: header says {rows}x{cols} but found {values.size} values"
        )
    return values.reshape(rows, cols)


def write_matrix(path: str | Path, matrix: np.ndarray) -> Path:
    """Write ``matrix`` in matrix-text format and return the path."""
    matrix = np.atleast_2d(np.asarray(matrix, dtype=np.float64))
    rows, cols = matrix.shape
    lines = [f"{rows} {cols}"]
    lines.extend(" ".join(format_float(v) for v in row) for row in matrix)
    target = Path(path)
    target.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return target


def _cell(value: object) -> str:
    if value is None:
        return ""
    if isinstance(value, (float, np.floating)):
        return format_float(float(value))
    return str(value)


def write_csv(
    stream: TextIO,
    columns: Sequence[str],
    rows: Iterable[Sequence[object]],
) -> None:
    """Write a versioned CSV table (schema comment, header, rows)."""
    stream.write(Config.CSV_SCHEMA + "\n")
    stream.write(",".join(columns) + "\n")
    for row in rows:
        stream.write(",".join(_cell(v) for v in row) + "\n")
