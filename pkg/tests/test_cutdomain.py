"""Tests for cut domains, the Green's function and convergence rates."""

import math

import numpy as np
import pytest

from akhsylv.core.cutdomain import (
    CutDomain,
    Interval,
    effective_rate,
    g_grid,
    gap_saddle,
    gap_saddle_golden,
    green_real,
    inverse_rate,
    inverse_rho,
    nu,
    parse_domain,
    sign_rate,
)
from akhsylv.exceptions import (
    DomainError,
    SingularDomainError,
    UnsupportedDomainError,
)


class TestParseDomain:
    """parse_domain and the domain types."""

    def test_two_intervals(self):
        """Intervals are parsed and kept left to right."""
        domain = parse_domain("-1.8,-0.5;2,3")
        assert [(iv.lo, iv.hi) for iv in domain.intervals] == [(-1.8, -0.5), (2, 3)]
        assert domain.gaps == [(-0.5, 2.0)]

    def test_malformed_number_reports_position(self):
        """A bad number names its character position."""
        with pytest.raises(DomainError, match="position 4"):
            parse_domain("1,2;x,3")

    def test_missing_comma(self):
        """A piece without 'lo,hi' is rejected."""
        with pytest.raises(DomainError, match="position 0"):
            parse_domain("1;2,3")

    def test_overlapping_intervals(self):
        """Overlapping intervals raise DomainError."""
        with pytest.raises(DomainError):
            parse_domain("0,1;0.5,2")

    def test_of_sorts_and_rejects_overlap(self):
        """CutDomain.of accepts any order but no overlap."""
        domain = CutDomain.of((2.0, 3.0), Interval(lo=-1.0, hi=0.0))
        assert domain.intervals[0].lo == -1.0
        with pytest.raises(DomainError):
            CutDomain.of((0.0, 2.0), (1.0, 3.0))

    def test_interval_must_be_ordered(self):
        """lo >= hi fails validation."""
        with pytest.raises(ValueError):
            Interval(lo=1.0, hi=1.0)

    def test_balanced(self, symmetric_domain, sign_domain_sigma):
        """Equal-length intervals are balanced."""
        assert symmetric_domain.is_balanced()
        assert not sign_domain_sigma.is_balanced()


class TestGreenFunction:
    """re 𝔤 on and off Σ."""

    def test_zero_on_sigma(self, sign_domain_sigma):
        """re 𝔤 vanishes on Σ."""
        assert green_real(sign_domain_sigma, 2.5) == 0.0
        assert green_real(sign_domain_sigma, -1.0) == 0.0

    def test_positive_off_sigma(self, sign_domain_sigma):
        """re 𝔤 is positive in the gap, outside Σ and off the axis."""
        for z in (0.5, 4.0, -3.0, 1.0 + 1.0j):
            assert green_real(sign_domain_sigma, z) > 0.0

    def test_conjugate_symmetric(self, sign_domain_sigma):
        """re 𝔤(z̄) = re 𝔤(z)."""
        z = 0.7 + 0.4j
        assert green_real(sign_domain_sigma, z) == pytest.approx(
            green_real(sign_domain_sigma, z.conjugate())
        )

    def test_single_interval_integral_matches_closed_form(self):
        """Segment integration reproduces log|t + √(t²−1)| on [−1, 1]."""
        domain = CutDomain.of((-1.0, 1.0))
        z = 2.0 + 1.0j
        expected = math.log(abs(z + np.sqrt(z - 1.0) * np.sqrt(z + 1.0)))
        assert green_real(domain, z, closed_form=False) == pytest.approx(
            expected, rel=1e-10
        )
        assert green_real(domain, 3.0, closed_form=False) == pytest.approx(
            math.log(3.0 + math.sqrt(8.0)), rel=1e-10
        )

    def test_grid_shape(self, symmetric_domain):
        """g_grid samples e^{re 𝔤} ≥ 1 on the requested grid."""
        re_axis, im_axis, values = g_grid(symmetric_domain, (-2, 2, -1, 1), (5, 3))
        assert re_axis.size == 5 and im_axis.size == 3
        assert values.shape == (3, 5)
        assert np.all(values >= 1.0)


class TestRates:
    """Saddle points and rate bases."""

    @pytest.mark.parametrize("beta", [0.1, 0.3, 0.5])
    def test_symmetric_sign_rate(self, beta):
        """On [−1,−β] ∪ [β,1], ρ⁻¹ = √((1−β)/(1+β)) and z* = 0."""
        rate = sign_rate(CutDomain.of((-1.0, -beta), (beta, 1.0)))
        assert 1.0 / rate.rho == pytest.approx(
            math.sqrt((1.0 - beta) / (1.0 + beta)), rel=1e-8
        )
        assert rate.z_star == pytest.approx(0.0, abs=1e-10)

    @pytest.mark.parametrize("beta", [0.1, 0.5, 0.9])
    def test_symmetric_saddle_passes_verification(self, beta):
        """z* = 0 on balanced domains is accepted, not rejected as inaccurate."""
        domain = CutDomain.of((-1.0, -beta), (beta, 1.0))
        assert gap_saddle(domain) == pytest.approx(0.0, abs=1e-12)

    def test_root_three(self, symmetric_domain):
        """The β = 0.5 domain has ρ = √3."""
        assert sign_rate(symmetric_domain).rho == pytest.approx(math.sqrt(3.0))

    def test_saddle_methods_agree(self, sign_domain_sigma):
        """The integral ratio and golden-section search find the same z*."""
        z_star = gap_saddle(sign_domain_sigma)
        assert -0.5 < z_star < 2.0
        assert gap_saddle_golden(sign_domain_sigma) == pytest.approx(z_star, abs=1e-5)

    def test_saddle_needs_two_intervals(self):
        """A single interval has no gap saddle."""
        with pytest.raises(UnsupportedDomainError):
            gap_saddle(CutDomain.of((0.0, 1.0)))

    def test_inverse_rate_exact_case(self):
        """α/c = 1.25 gives the signed ratio −0.5."""
        assert inverse_rate(Interval(lo=0.25, hi=2.25)) == pytest.approx(-0.5)
        assert inverse_rate(Interval(lo=-2.25, hi=-0.25)) == pytest.approx(0.5)

    @pytest.mark.parametrize("beta", [0.1, 0.3, 0.5])
    def test_inverse_rate_on_operator_interval(self, beta):
        """On [2β, 2] the magnitude is (1−√β)/(1+√β)."""
        ratio = abs(inverse_rate(Interval(lo=2.0 * beta, hi=2.0)))
        root = math.sqrt(beta)
        assert ratio == pytest.approx((1.0 - root) / (1.0 + root), rel=1e-8)

    def test_zero_in_interval(self):
        """1/x series need 0 outside the interval."""
        with pytest.raises(SingularDomainError):
            inverse_rate(Interval(lo=-1.0, hi=1.0))
        with pytest.raises(SingularDomainError):
            inverse_rho(CutDomain.of((-1.0, 0.5), (1.0, 2.0)))

    def test_two_intervals_beat_their_hull(self):
        """Splitting the operator interval around an outlier raises ρ."""
        hull = inverse_rho(CutDomain.of((1.0, 11.8)))
        split = inverse_rho(CutDomain.of((1.0, 2.8), (10.5, 11.8)))
        assert split > hull > 1.0


class TestNu:
    """Divergence diagnostics for spectra off Σ."""

    def test_spectrum_on_sigma(self, symmetric_domain):
        """Eigenvalues on Σ give ν = −log ρ."""
        rate = sign_rate(symmetric_domain)
        value = nu(symmetric_domain, [-0.7, 0.6, 1.0], rate.z_star)
        assert value == pytest.approx(-math.log(rate.rho), rel=1e-10)
        assert effective_rate(value) == pytest.approx(rate.rho, rel=1e-10)

    def test_far_outlier_diverges(self, symmetric_domain):
        """An eigenvalue far from Σ makes ν positive."""
        rate = sign_rate(symmetric_domain)
        assert nu(symmetric_domain, [0.7, 50.0], rate.z_star) > 0.0

    def test_effective_rate(self):
        """effective_rate is e^{−ν}."""
        assert effective_rate(-0.25) == pytest.approx(math.exp(0.25))
