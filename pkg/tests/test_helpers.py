"""Tests for matrix-text and CSV files, the result store and the logger."""

import io
import logging
from pathlib import Path
from unittest.mock import patch

import numpy as np
import pytest

from akhsylv.config import Config
from akhsylv.exceptions import MatrixFormatError
from akhsylv.services.results import ResultStore
from akhsylv.solvers.base import LowRankPair
from akhsylv.solvers.report import REPORT_COLUMNS, ConvergenceReport
from akhsylv.utils.helpers import format_float, read_matrix, write_csv, write_matrix
from akhsylv.utils.logger import _ColorFormatter, get_logger


class TestMatrixText:
    """The "rows cols" matrix format."""

    def test_write_then_read(self, tmp_path):
        """Values survive a write and a read exactly."""
        matrix = np.array([[1.0, -2.5e-17], [np.pi, 3.0]])
        path = write_matrix(tmp_path / "m.mat", matrix)
        assert path.read_text().splitlines()[0] == "2 2"
        np.testing.assert_array_equal(read_matrix(path), matrix)

    def test_free_whitespace(self, tmp_path):
        """Values may wrap across lines."""
        path = tmp_path / "m.mat"
        path.write_text("2 3\n1 2\n3 4 5\n6\n")
        assert read_matrix(path).shape == (2, 3)

    @pytest.mark.parametrize("text", ["", "2", "2 2\n1 2 3", "2 1\n1 x", "-1 0\n"])
    def test_malformed(self, tmp_path, text):
        """Bad headers, counts and tokens raise MatrixFormatError."""
        path = tmp_path / "bad.mat"
        path.write_text(text)
        with pytest.raises(MatrixFormatError):
            read_matrix(path)

    def test_missing_file(self, tmp_path):
        """A missing file surfaces as an OSError."""
        with pytest.raises(OSError):
            read_matrix(tmp_path / "absent.mat")


class TestCsv:
    """Versioned CSV tables."""

    def test_schema_header_and_cells(self):
        """Schema comment, header, floats at full precision, None as empty."""
        stream = io.StringIO()
        write_csv(stream, ("a", "b", "c"), [(1, 0.1, None)])
        lines = stream.getvalue().splitlines()
        assert lines[0] == Config.CSV_SCHEMA
        assert lines[1] == "a,b,c"
        assert lines[2] == "1,0.10000000000000001,"

    def test_format_float(self):
        """None formats as an empty cell."""
        assert format_float(None) == ""
        assert float(format_float(1 / 3)) == 1 / 3

    def test_report_rows(self):
        """Dense reports leave the rank columns empty."""
        report = ConvergenceReport("sign", 2.0, 2)
        report.add(1.0, 10)
        report.add(0.5, 10, rank_jk=3, rank_wz=4)
        stream = io.StringIO()
        report.write_csv(stream)
        lines = stream.getvalue().splitlines()
        assert lines[1] == ",".join(REPORT_COLUMNS)
        assert lines[2].startswith("1,1,,,10,")
        assert report.max_rank_wz == 4
        assert report.iterations == 2


class TestResultStore:
    """Files written by the CLI."""

    def test_dense_solution(self, tmp_path):
        """Dense solutions go to P.x."""
        store = ResultStore(tmp_path)
        written = store.write_solution("out/run", np.eye(2))
        assert written == [tmp_path / "out" / "run.x"]
        np.testing.assert_array_equal(read_matrix(written[0]), np.eye(2))

    def test_factored_solution(self, tmp_path):
        """Factors go to P.w and P.z."""
        pair = LowRankPair(np.ones((3, 1)), np.ones((1, 2)))
        written = ResultStore(tmp_path).write_solution("run", pair)
        assert [p.suffix for p in written] == [".w", ".z"]
        assert read_matrix(written[1]).shape == (1, 2)

    def test_table(self, tmp_path):
        """Tables are written with the schema header."""
        path = ResultStore(tmp_path).write_table("t.csv", ("x",), [(1,)])
        assert path.read_text().splitlines() == [Config.CSV_SCHEMA, "x", "1"]

    def test_write_failure_is_logged(self, tmp_path):
        """Write errors are logged with the target path and re-raised."""
        store = ResultStore(tmp_path)
        with (
            patch(
                "akhsylv.services.results.write_matrix",
                side_effect=PermissionError("read-only"),
            ),
            patch("akhsylv.services.results.logger") as mock_logger,
            pytest.raises(PermissionError),
        ):
            store.write_solution("run", np.eye(2))
        _, kwargs = mock_logger.error.call_args
        assert kwargs["extra"]["path"] == str(Path(tmp_path) / "run.x")


class TestLogger:
    """Approved-extra rendering."""

    def _record(self, **extra):
        record = logging.LogRecord("akhsylv", logging.INFO, "", 0, "msg", None, None)
        record.__dict__.update(extra)
        return record

    def test_approved_keys_rendered(self):
        """Approved keys appear as key=value with short floats."""
        text = _ColorFormatter(use_color=False).format(
            self._record(rho=1.23456789, iterations=41)
        )
        assert "rho=1.235" in text
        assert "iterations=41" in text

    def test_unknown_keys_flagged(self):
        """Unapproved keys are listed under extra_keys."""
        text = _ColorFormatter(use_color=False).format(self._record(colour="red"))
        assert "extra_keys=colour" in text

    def test_named_logger(self):
        """get_logger returns the namespaced logger."""
        assert get_logger("akhsylv.test").name == "akhsylv.test"
