"""Tests for the benchmark tables."""

import math

import numpy as np
import pytest

from akhsylv.core.cutdomain import CutDomain, green_real, sign_rate
from akhsylv.services.bench import (
    FIGURES,
    OFF_SIGMA_LEVEL,
    BenchSettings,
    off_sigma_outliers,
    run_figure,
)


@pytest.fixture
def small():
    """Benchmark settings sized for unit tests."""
    return BenchSettings(n=16, m=12, count=30)


def test_unknown_figure(small):
    """Unknown figure names raise KeyError."""
    with pytest.raises(KeyError):
        run_figure("err-heur-2", small)


def test_coeff_rate_envelope(small):
    """Every |α_j| sits under its envelope on the default domain."""
    table = run_figure("coeff-rate", small)
    assert table.columns == ("j", "abs_alpha", "envelope")
    assert len(table.rows) == 30
    assert all(alpha <= envelope for _, alpha, envelope in table.rows)


@pytest.mark.parametrize("name", ["err-heur", "err-heur-inv"])
def test_error_below_bound(name, small):
    """The bound column dominates the error column until saturation."""
    table = run_figure(name, small)
    assert table.columns == ("iter", "error", "bound")
    for _, error, bound in table.rows:
        if error <= 1e-11:
            break
        assert error <= bound
    assert table.rows[-1][1] <= 1e-10


def test_weight_rank_columns(small):
    """Weighted and plain runs share iteration counts."""
    table = run_figure("weight-rank", small)
    assert table.name == "weight-rank"
    assert len(table.columns) == 7
    assert [row[0] for row in table.rows] == list(range(1, len(table.rows) + 1))


def test_storage_within_limit(small):
    """Stored entries stay below the per-method limit."""
    table = run_figure("storage", small)
    assert {row[0] for row in table.rows} == {"sign", "inverse"}
    assert all(entries <= limit for _, _, entries, limit in table.rows)


def test_two_intervals_beat_one(small):
    """Splitting the operator domain around the outlier converges faster."""
    table = run_figure("mult-int-inv", small)
    single = [row[1] for row in table.rows if row[1] is not None]
    split = [row[2] for row in table.rows if row[2] is not None]
    assert len(split) < len(single)
    assert split[-1] <= 1e-9


@pytest.mark.slow
@pytest.mark.parametrize("name", ["off-sigma", "frechet", "weight-rank-inv"])
def test_remaining_figures(name):
    """The heavier figures run at reduced size and return finite errors."""
    table = run_figure(name, BenchSettings(n=40, m=40))
    assert table.rows
    errors = np.array([row[1] for row in table.rows], dtype=float)
    assert np.all(np.isfinite(errors))


def test_every_figure_is_registered():
    """All benchmark figures are registered by name."""
    assert set(FIGURES) == {
        "err-heur",
        "err-heur-inv",
        "weight-rank",
        "weight-rank-inv",
        "mult-int-inv",
        "coeff-rate",
        "storage",
        "off-sigma",
        "frechet",
    }


class TestOffSigma:
    """Spectra moved off Σ but kept inside the ρ level curve."""

    DOMAIN = CutDomain.of((-2.0, -0.5), (0.5, 6.0))

    def test_outliers_inside_level_curve(self):
        """Both outliers are off Σ with re 𝔤 = level·log ρ < log ρ."""
        log_rho = math.log(sign_rate(self.DOMAIN).rho)
        inner, outer = off_sigma_outliers(self.DOMAIN, OFF_SIGMA_LEVEL)
        assert inner < 0.5 and outer > 6.0
        for x in (inner, outer):
            assert not self.DOMAIN.contains(x)
            value = green_real(self.DOMAIN, x)
            assert value == pytest.approx(OFF_SIGMA_LEVEL * log_rho, rel=1e-8)
            assert value < log_rho

    @pytest.mark.slow
    def test_tail_slope_matches_nu(self):
        """log error falls by ν per iteration over the 20 steps before saturation."""
        table = run_figure("off-sigma", BenchSettings(n=40, m=40))
        errors = np.array([row[1] for row in table.rows])
        bound_nu = np.array([row[3] for row in table.rows])
        nu_value = float(np.log(bound_nu[1] / bound_nu[0]))
        assert nu_value < 0.0
        floor = 100.0 * errors.min()
        saturation = int(np.argmax(errors <= floor))
        assert saturation >= 20
        window = np.arange(saturation - 20, saturation)
        slope = np.polyfit(window, np.log(errors[window]), 1)[0]
        assert slope == pytest.approx(nu_value, rel=0.3)
