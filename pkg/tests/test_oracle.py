"""
Unit tests for the analytic_widths.oracle module.

The brute-force references are first checked on functions with known
answers, then used against the library's width values.
"""

import math

import numpy as np
import pytest

from analytic_widths.domain import KernelParams, NodeGrid
from analytic_widths.exceptions import InvalidInputError
from analytic_widths.extremal import best_approx_value, eval_Phi
from analytic_widths.oracle import (
    quadrature_convolution,
    remez_trig,
    sign_sin_pieces,
    sup_norm,
)
from analytic_widths.series_core import eval_H
from analytic_widths.sk_spline import build_fundamental_spline, derivative_pieces

# ============================================================================
# TEST SUITE 1: Grid Search
# ============================================================================


class TestSupNorm:
    """Test suite for sup_norm."""

    def test_cosine(self):
        """Test max cos = 1 at t = 0."""
        result = sup_norm(np.cos)
        assert result.max_value == pytest.approx(1.0, abs=1e-14)
        assert min(result.argmax, 2 * math.pi - result.argmax) < 1e-6
        assert result.refinement_width <= 1e-14

    def test_off_grid_maximum(self):
        """Test that refinement finds a maximum between grid points."""
        result = sup_norm(lambda t: np.cos(t - 0.123456789))
        assert result.argmax == pytest.approx(0.123456789, abs=1e-6)
        assert result.max_value == pytest.approx(1.0, abs=1e-13)

    def test_constant(self):
        """Test that a constant function is handled without refinement."""
        result = sup_norm(lambda t: 2.5)
        assert result.max_value == 2.5

    def test_rejects_bad_period(self):
        """Test that the period must be positive."""
        with pytest.raises(InvalidInputError, match="period must be positive"):
            sup_norm(np.cos, period=0.0)

    @pytest.mark.parametrize("beta", [0.0, 0.5, 1.3])
    def test_matches_width_value(self, beta):
        """Test sup |Phi| against best_approx_value."""
        params = KernelParams(h=1.0, beta=beta)
        n = 4
        result = sup_norm(lambda t: np.abs(eval_Phi(t, n, params)))
        assert result.max_value == pytest.approx(best_approx_value(n, params).value, rel=1e-10)


# ============================================================================
# TEST SUITE 2: Remez Exchange
# ============================================================================


class TestRemez:
    """Test suite for remez_trig."""

    def test_higher_harmonic(self):
        """Test E_1(cos 2t) = 1."""
        result = remez_trig(lambda t: np.cos(2 * t), 1)
        assert result.error == pytest.approx(1.0, abs=1e-8)
        assert len(result.reference) == 4

    def test_zero_function(self):
        """Test that f = 0 needs no iterations."""
        result = remez_trig(lambda t: 0.0, 2)
        assert result.error == 0.0
        assert result.iterations == 0

    def test_rejects_negative_order(self):
        """Test that the order must be nonnegative."""
        with pytest.raises(InvalidInputError, match="order must be nonnegative"):
            remez_trig(np.cos, -1)

    @pytest.mark.slow
    def test_matches_width_value(self):
        """Test E_{n-1}(Phi) against the width value at h = 1, n = 3."""
        params = KernelParams(h=1.0, beta=0.5)
        result = remez_trig(lambda t: eval_Phi(t, 3, params), 2)
        assert result.error == pytest.approx(best_approx_value(3, params).value, abs=1e-8)


# ============================================================================
# TEST SUITE 3: Convolution by Quadrature
# ============================================================================


class TestQuadrature:
    """Test suite for sign_sin_pieces and quadrature_convolution."""

    def test_sign_sin_pieces(self):
        """Test the step function for n = 2."""
        pieces = sign_sin_pieces(2)
        np.testing.assert_allclose(pieces.breakpoints, np.arange(5) * math.pi / 2)
        assert pieces.values == [1.0, -1.0, 1.0, -1.0]

    def test_sign_sin_pieces_rejects_zero(self):
        """Test that n = 0 is rejected."""
        with pytest.raises(InvalidInputError):
            sign_sin_pieces(0)

    @pytest.mark.parametrize("x", [0.0, 0.4, 2.9])
    def test_convolution_is_phi(self, x):
        """Test (1/pi) int H(x - t) sign sin(2t) dt = Phi(x)."""
        params = KernelParams(h=1.0, beta=0.3)
        value = quadrature_convolution(
            lambda s: eval_H(s, params), sign_sin_pieces(2), x
        )
        assert value == pytest.approx(eval_Phi(x, 2, params), abs=1e-9)

    def test_convolution_matches_phi_at_random_points(self):
        """Test quadrature against eval_Phi at 64 seeded random points."""
        params = KernelParams(h=0.8, beta=0.6)
        rng = np.random.default_rng(7)
        pieces = sign_sin_pieces(3)
        for x in rng.uniform(0.0, 2 * math.pi, 64):
            value = quadrature_convolution(lambda s: eval_H(s, params), pieces, x)
            assert value == pytest.approx(eval_Phi(x, 3, params), abs=1e-9)

    def test_spline_reconstructed_from_derivative(self):
        """Test alpha_0 + (1/pi) int H(y_k - t) s^psi(t) dt = delta_{0k} at the nodes."""
        params = KernelParams(h=1.0, beta=0.3)
        grid = NodeGrid(n=4, y=0.1)
        system = build_fundamental_spline(grid, params)
        pieces = derivative_pieces(system)
        for k, y_k in enumerate(grid.shifted_nodes):
            value = system.alpha[0] + quadrature_convolution(
                lambda s: eval_H(s, params), pieces, float(y_k)
            )
            assert value == pytest.approx(1.0 if k == 0 else 0.0, abs=1e-12)
