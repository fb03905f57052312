"""Tests for the acceptance suites."""

from unittest.mock import patch

import pytest

from akhsylv.services.oracles import known_problem
from akhsylv.services.verify import (
    SOLVER_INSTANCES,
    SUITES,
    THRESHOLDS,
    Check,
    SuiteResult,
    run_suite,
)


def test_check_pass_and_fail():
    """A check passes when the value does not exceed its threshold."""
    assert Check("envelope", 0.0, 0.0).passed
    assert not Check("storage", 1.5, 1.0).passed


def test_suite_rows():
    """Rows carry suite, name, value, threshold and status."""
    result = SuiteResult("rates")
    result.record("sign-rate", 1e-12)
    result.record("inverse-rate", 1.0)
    assert result.to_rows() == [
        ("rates", "sign-rate", 1e-12, THRESHOLDS["sign-rate"], "pass"),
        ("rates", "inverse-rate", 1.0, THRESHOLDS["inverse-rate"], "FAIL"),
    ]
    assert not result.passed
    assert [c.name for c in result.failures] == ["inverse-rate"]


def test_unknown_threshold():
    """Recording an unregistered check name raises KeyError."""
    with pytest.raises(KeyError):
        SuiteResult("rates").record("not-a-check", 0.0)


def test_unknown_suite():
    """Unknown suite names raise KeyError."""
    with pytest.raises(KeyError):
        run_suite("everything")


def test_rates_suite_passes():
    """Closed-form rates agree with the Green's-function rates."""
    result = run_suite("rates")
    assert result.passed
    assert {c.name for c in result.checks} == {
        "sign-rate",
        "inverse-rate",
        "inverse-rate-exact",
    }


def test_failure_is_logged():
    """A check over its threshold is reported and logged."""
    with (
        patch.dict(THRESHOLDS, {"inverse-rate-exact": -1.0}),
        patch("akhsylv.services.verify.logger") as mock_logger,
    ):
        result = run_suite("rates")
    assert not result.passed
    assert [c.name for c in result.failures] == ["inverse-rate-exact"]
    mock_logger.warning.assert_called_once()


def test_oracles_suite_passes():
    """Eigen and Kronecker oracles agree on every seeded instance."""
    assert run_suite("oracles", seed=5).passed


@pytest.mark.slow
@pytest.mark.parametrize("name", ["solvers", "coeffs"])
def test_heavy_suites_pass(name):
    """Solver and coefficient suites pass at the default seed."""
    result = run_suite(name)
    assert result.passed, result.failures
    assert name in SUITES


@pytest.mark.slow
def test_solvers_suite_covers_twenty_problems():
    """Both methods are compared with the oracle on 20 seeded dense problems."""
    with patch("akhsylv.services.verify.known_problem", wraps=known_problem) as spy:
        result = run_suite("solvers", seed=11)
    dense_seeds = {
        call.kwargs["seed"]
        for call in spy.call_args_list
        if call.kwargs.get("low_rank") is False
    }
    assert len(dense_seeds) >= SOLVER_INSTANCES == 20
    assert result.passed, result.failures
