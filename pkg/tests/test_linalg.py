"""Tests for the dense kernels: factorizations, quadrature, GMRES."""

import numpy as np
import pytest

from akhsylv.core.linalg import (
    SpectrumSpec,
    gauss_legendre,
    gmres,
    integrate,
    lq,
    qr,
    random_factors,
    random_known_spectrum,
    svd,
)
from akhsylv.exceptions import DimensionError


@pytest.fixture
def tall_matrix():
    """Seeded 9x4 Gaussian matrix."""
    return np.random.default_rng(3).standard_normal((9, 4))


class TestFactorizations:
    """QR, LQ and SVD wrappers."""

    def test_qr_reconstructs_with_orthonormal_q(self, tall_matrix):
        """Q has orthonormal columns, R has a nonnegative diagonal, QR = M."""
        q, r = qr(tall_matrix)
        assert q.shape == (9, 4) and r.shape == (4, 4)
        np.testing.assert_allclose(q.T @ q, np.eye(4), atol=1e-14)
        assert np.all(np.diag(r) >= 0.0)
        np.testing.assert_allclose(q @ r, tall_matrix, atol=1e-13)

    def test_qr_of_empty_matrix(self):
        """An empty factor gives empty Q and R of matching shapes."""
        q, r = qr(np.zeros((5, 0)))
        assert q.shape == (5, 0) and r.shape == (0, 0)

    def test_lq_reconstructs(self, tall_matrix):
        """L @ Q recovers a wide matrix and Q has orthonormal rows."""
        wide = tall_matrix.T
        l, q = lq(wide)
        np.testing.assert_allclose(q @ q.T, np.eye(4), atol=1e-14)
        np.testing.assert_allclose(l @ q, wide, atol=1e-13)

    def test_svd_is_sorted_and_exact(self, tall_matrix):
        """Singular values are nonincreasing and U diag(S) Vh = M."""
        u, s, vh = svd(tall_matrix)
        assert np.all(np.diff(s) <= 0.0)
        np.testing.assert_allclose((u * s) @ vh, tall_matrix, atol=1e-13)


class TestQuadrature:
    """Gauss-Legendre rule and adaptive integration."""

    def test_weights_sum_to_two(self):
        """Weights are positive and integrate the constant 1 exactly."""
        x, w = gauss_legendre(25)
        assert np.all(w > 0.0)
        assert np.all(np.diff(x) > 0.0)
        assert w.sum() == pytest.approx(2.0, abs=1e-14)

    def test_exact_for_degree_2n_minus_1(self):
        """An n-point rule integrates x^(2n-2) exactly."""
        x, w = gauss_legendre(6)
        assert np.dot(w, x**10) == pytest.approx(2.0 / 11.0, rel=1e-13)

    def test_nonpositive_size_rejected(self):
        """n < 1 raises ValueError."""
        with pytest.raises(ValueError):
            gauss_legendre(0)

    def test_integrate_smooth_and_complex(self):
        """Adaptive integration handles real and complex integrands."""
        assert integrate(np.sin, 0.0, np.pi) == pytest.approx(2.0, abs=1e-12)
        value = integrate(lambda t: np.exp(1j * t), 0.0, np.pi)
        assert value == pytest.approx(2j, abs=1e-12)


class TestGmres:
    """Unrestarted GMRES on matrix-free operators."""

    def test_identity_plus_rank_one_converges_in_two_steps(self):
        """I + uvᵀ has two distinct eigenvalues, so two Krylov steps suffice."""
        rng = np.random.default_rng(5)
        u, v, b = rng.standard_normal((3, 40))
        result = gmres(lambda x: x + u * np.dot(v, x), b, tol=1e-12)
        assert result.converged
        assert result.iterations <= 2
        np.testing.assert_allclose(
            result.solution + u * np.dot(v, result.solution), b, atol=1e-10
        )
        assert result.residual_history[0] == 1.0

    def test_zero_rhs(self):
        """A zero right-hand side returns the zero vector without iterating."""
        result = gmres(lambda x: 2.0 * x, np.zeros(4))
        assert result.converged and result.iterations == 0
        assert not result.solution.any()

    def test_operator_size_mismatch(self):
        """An operator returning the wrong length raises DimensionError."""
        with pytest.raises(DimensionError):
            gmres(lambda x: x[:-1], np.ones(5))


class TestRandomMatrices:
    """Seeded test matrices."""

    def test_known_spectrum(self):
        """M is symmetric with the requested eigenvalues."""
        spec = SpectrumSpec(eigenvalues=(1.0, 2.0, 5.0), orthogonal_factor_seed=2)
        matrix, q = random_known_spectrum(spec)
        np.testing.assert_allclose(matrix, matrix.T)
        np.testing.assert_allclose(np.linalg.eigvalsh(matrix), [1.0, 2.0, 5.0])
        np.testing.assert_allclose(q.T @ q, np.eye(3), atol=1e-14)

    def test_spectrum_must_be_finite(self):
        """Non-finite eigenvalues are rejected by validation."""
        with pytest.raises(ValueError):
            SpectrumSpec(eigenvalues=(1.0, float("nan")))

    def test_factors_are_seeded(self):
        """Equal seeds give equal factors of the requested shapes."""
        u1, v1 = random_factors(6, 2, 4, seed=11)
        u2, v2 = random_factors(6, 2, 4, seed=11)
        assert u1.shape == (6, 2) and v1.shape == (2, 4)
        np.testing.assert_array_equal(u1, u2)
        np.testing.assert_array_equal(v1, v2)
