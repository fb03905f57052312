"""Tests for weights, recurrence tables and coefficient streams."""

import math

import numpy as np
import pytest

from akhsylv.core.akhiezer import (
    STIELTJES_NODE_FACTOR,
    CoefficientStream,
    RecurrenceTable,
    WeightSpec,
    akhiezer_recurrence,
    cauchy_transform,
    cauchy_transforms,
    chebyshev_recurrence,
    contour_circles,
    general_f_coeffs,
    inverse_coeffs_chebyshev,
    inverse_coeffs_general,
    inverse_scalars,
    poly_eval,
    poly_matrices,
    poly_values,
    sigma_quadrature,
    sign_coeffs_circles,
    sign_coeffs_pv,
    stieltjes_recurrence,
    symmetric_akhiezer_recurrence,
    weight_eval,
)
from akhsylv.core.cutdomain import CutDomain, Interval, parse_domain, sign_rate
from akhsylv.exceptions import (
    AccuracyError,
    ConditioningError,
    DomainError,
    GeometryError,
)


def _gram(spec: WeightSpec, table: RecurrenceTable, count: int) -> np.ndarray:
    quad = sigma_quadrature(spec, STIELTJES_NODE_FACTOR * (count + 1))
    basis = poly_values(table, count, quad.nodes)
    return (basis * quad.weights) @ basis.T


class TestWeights:
    """Weight specifications and Σ-quadrature."""

    def test_for_domain_picks_kind(self, sign_domain_sigma):
        """One interval gets Chebyshev, two get Akhiezer."""
        assert WeightSpec.for_domain(CutDomain.of((0.0, 1.0))).kind == "chebyshev"
        assert WeightSpec.for_domain(sign_domain_sigma).kind == "akhiezer"

    def test_akhiezer_needs_two_intervals(self):
        """The Akhiezer weight on one interval fails validation."""
        with pytest.raises(ValueError):
            WeightSpec(domain=CutDomain.of((0.0, 1.0)), kind="akhiezer")

    def test_quadrature_has_unit_mass(self, sign_domain_sigma):
        """Σ-quadrature weights sum to 1 and nodes lie on Σ."""
        quad = sigma_quadrature(WeightSpec.for_domain(sign_domain_sigma), 64)
        assert quad.weights.sum() == pytest.approx(1.0)
        assert all(sign_domain_sigma.contains(x) for x in quad.nodes)

    def test_weight_outside_sigma(self, sign_domain_sigma):
        """Evaluating the weight in the gap raises DomainError."""
        spec = WeightSpec.for_domain(sign_domain_sigma)
        assert weight_eval(spec, 2.5) > 0.0
        with pytest.raises(DomainError):
            weight_eval(spec, 0.0)


class TestRecurrences:
    """Chebyshev, closed-form Akhiezer and Stieltjes tables."""

    def test_chebyshev_table_is_orthonormal(self):
        """The Chebyshev table is orthonormal for the Chebyshev weight."""
        interval = Interval(lo=1.0, hi=4.0)
        spec = WeightSpec.for_domain(CutDomain.of(interval))
        table = chebyshev_recurrence(interval, 20)
        np.testing.assert_allclose(_gram(spec, table, 20), np.eye(20), atol=1e-12)

    def test_symmetric_closed_form_matches_stieltjes(self, symmetric_domain):
        """First 40 pairs for β = 0.5 agree to 1e-10."""
        spec = WeightSpec(domain=symmetric_domain, kind="akhiezer")
        quad = sigma_quadrature(spec, STIELTJES_NODE_FACTOR * 41)
        computed = stieltjes_recurrence(spec, quad, 40)
        exact = symmetric_akhiezer_recurrence(0.5, 0.0, 1.0, 40)
        np.testing.assert_allclose(computed.a, exact.a, atol=1e-10)
        np.testing.assert_allclose(computed.b, exact.b, atol=1e-10)

    def test_unbalanced_table_is_orthonormal(self, sign_domain_sigma):
        """The Stieltjes table on an unbalanced domain is orthonormal."""
        spec = WeightSpec.for_domain(sign_domain_sigma)
        table = akhiezer_recurrence(sign_domain_sigma, 30)
        np.testing.assert_allclose(_gram(spec, table, 30), np.eye(30), atol=1e-10)

    def test_positive_b_required(self):
        """A nonpositive b_k raises ConditioningError."""
        with pytest.raises(ConditioningError):
            RecurrenceTable(np.zeros(2), np.array([1.0, 0.0]))

    def test_bad_beta(self):
        """β must lie in (0, 1)."""
        with pytest.raises(DomainError):
            symmetric_akhiezer_recurrence(1.5, 0.0, 1.0, 4)


class TestPolynomials:
    """Scalar and matrix evaluation of the recurrence."""

    def test_poly_eval_matches_values(self, symmetric_domain):
        """poly_eval agrees with the rows of poly_values."""
        table = akhiezer_recurrence(symmetric_domain, 10)
        rows = poly_values(table, 10, np.array([0.3, 0.8]))
        assert poly_eval(table, 7, 0.8) == pytest.approx(rows[7, 1])

    def test_poly_matrices_on_diagonal(self, symmetric_domain):
        """p_k(diag(x)) = diag(p_k(x))."""
        table = akhiezer_recurrence(symmetric_domain, 8)
        x = np.array([-0.9, -0.6, 0.55, 0.95])
        expected = poly_values(table, 8, x)
        for k, matrix in enumerate(poly_matrices(table, np.diag(x))):
            np.testing.assert_allclose(np.diag(matrix), expected[k], atol=1e-12)

    def test_degree_outside_table(self, symmetric_domain):
        """Asking beyond the table raises IndexError."""
        table = akhiezer_recurrence(symmetric_domain, 3)
        with pytest.raises(IndexError):
            poly_eval(table, 3, 0.0)


class TestCauchyTransforms:
    """Weighted Cauchy transforms off Σ."""

    def test_conjugate_symmetry(self, sign_domain_sigma):
        """For real w, C[p_k w](z̄) = −conj(C[p_k w](z))."""
        spec = WeightSpec.for_domain(sign_domain_sigma)
        table = akhiezer_recurrence(sign_domain_sigma, 6)
        z = 0.4 + 0.9j
        for k in range(6):
            upper = cauchy_transform(spec, table, k, z)
            lower = cauchy_transform(spec, table, k, z.conjugate())
            assert lower == pytest.approx(-upper.conjugate(), abs=1e-13)

    def test_point_too_close_to_sigma(self, sign_domain_sigma):
        """Points inside the guard band raise AccuracyError."""
        spec = WeightSpec.for_domain(sign_domain_sigma)
        table = akhiezer_recurrence(sign_domain_sigma, 4)
        with pytest.raises(AccuracyError):
            cauchy_transforms(spec, table, 4, np.array([2.5 + 1e-9j]))


class TestCoefficientStreams:
    """Sign, inverse and general-f coefficients."""

    @pytest.mark.parametrize("text", ["-1.8,-0.5;2,3", "-1.8,-0.1;0.1,3"])
    def test_sign_envelope_and_pv_agreement(self, text):
        """|α_j| ≤ 5ρ^{−j} and the circle and PV streams agree to 1e-10."""
        domain = parse_domain(text)
        rho = sign_rate(domain).rho
        count = int(math.ceil(math.log(5.0e16) / math.log(rho)))
        spec = WeightSpec.for_domain(domain)
        table = akhiezer_recurrence(domain, count)
        circles = sign_coeffs_circles(spec, table, count)
        pv = sign_coeffs_pv(spec, table, count, 400)
        assert circles.envelope_violations().size == 0
        np.testing.assert_allclose(circles.alpha, pv.alpha, atol=1e-10)

    def test_sign_positive_interval_flips(self, sign_domain_sigma):
        """Choosing the other positive interval negates every coefficient."""
        spec = WeightSpec.for_domain(sign_domain_sigma)
        table = akhiezer_recurrence(sign_domain_sigma, 20)
        right = sign_coeffs_circles(spec, table, 20, positive=1)
        left = sign_coeffs_circles(spec, table, 20, positive=0)
        np.testing.assert_allclose(left.alpha, -right.alpha, atol=1e-12)

    def test_pv_needs_zero_in_gap(self):
        """The principal-value rule needs 0 strictly inside the gap."""
        domain = CutDomain.of((0.5, 1.0), (2.0, 3.0))
        spec = WeightSpec.for_domain(domain)
        table = akhiezer_recurrence(domain, 4)
        with pytest.raises(GeometryError):
            sign_coeffs_pv(spec, table, 4)

    def test_chebyshev_inverse_closed_form(self):
        """α = 1.25, c = 1 gives S_0 = 4/3 and S_1 = −2/3."""
        interval = Interval(lo=0.25, hi=2.25)
        np.testing.assert_allclose(
            inverse_scalars(interval, 2), [4.0 / 3.0, -2.0 / 3.0], rtol=1e-14
        )
        stream = inverse_coeffs_chebyshev(interval, 2)
        assert stream.alpha[1] == pytest.approx(-math.sqrt(2.0) * 2.0 / 3.0)
        assert stream.take(5).size == 5

    def test_general_inverse_matches_closed_form(self):
        """Cauchy-transform 1/x coefficients reproduce the Chebyshev stream."""
        interval = Interval(lo=1.0, hi=4.0)
        spec = WeightSpec.for_domain(CutDomain.of(interval))
        table = chebyshev_recurrence(interval, 25)
        general = inverse_coeffs_general(spec, table, 25)
        closed = inverse_coeffs_chebyshev(interval, 25)
        np.testing.assert_allclose(general.alpha, closed.alpha, atol=1e-12)
        assert general.rho == pytest.approx(closed.rho)

    def test_exp_series_sums_to_exp(self, sign_domain_sigma):
        """Σ α_j p_j(x) reproduces e^x on Σ."""
        spec = WeightSpec.for_domain(sign_domain_sigma)
        table = akhiezer_recurrence(sign_domain_sigma, 40)
        stream = general_f_coeffs(np.exp, spec, table, 40)
        x = np.array([-1.2, 2.4, 3.0])
        total = stream.alpha @ poly_values(table, 40, x)
        np.testing.assert_allclose(total, np.exp(x), rtol=1e-9)

    def test_stream_without_extension(self):
        """A finite stream refuses longer prefixes."""
        stream = CoefficientStream(np.ones(3), rho=2.0)
        np.testing.assert_allclose(stream.envelope(), [5.0, 2.5, 1.25])
        with pytest.raises(IndexError):
            stream.take(4)

    def test_envelope_ignores_rounding_noise(self):
        """Tail coefficients at rounding level never count as violations."""
        rho, count = 2.0, 80
        alpha = 2.5 * rho ** -np.arange(count, dtype=float)
        alpha[45:] = 3e-15 * (-1.0) ** np.arange(count - 45)
        stream = CoefficientStream(alpha, rho=rho)
        assert stream.rounding_floor() == pytest.approx(250.0 * np.finfo(float).eps)
        assert stream.envelope_violations().size == 0

        alpha[3] = 1.0
        assert stream.envelope_violations().tolist() == [3]

    def test_circles_clear_of_sigma(self, sign_domain_sigma):
        """Circles enclose one interval each; oversized circles are rejected."""
        circles = contour_circles(sign_domain_sigma)
        assert len(circles) == 2
        with pytest.raises(GeometryError):
            contour_circles(sign_domain_sigma, radius_factor=3.0)
