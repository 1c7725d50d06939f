"""
Unit tests for the analytic_widths.sk_spline module.

The closed-form eigenvalues are checked against the defining node sums, the
FFT inversion against the interpolation conditions, and the scaled
derivative forms against each other and against the coefficient form.
"""

import math

import numpy as np
import pytest

from analytic_widths.domain import KernelParams, NodeGrid, SeriesConfig
from analytic_widths.exceptions import DomainError, InvalidInputError
from analytic_widths.extremal import root_phase_cosine, solve_theta
from analytic_widths.series_core import psi
from analytic_widths.sk_spline import (
    build_fundamental_spline,
    derivative_from_coefficients,
    derivative_midpoint_values,
    derivative_pieces,
    derivative_representation,
    derivative_unit,
    direct_sum_scale,
    eval_derivative_repr,
    extremal_grid,
    gamma_breakdown,
    lambda_closed,
    lambda_direct,
    lemma3_bound,
    normalized_eigenvalues,
)


def y0_grid(n, params):
    return extremal_grid(n, solve_theta(n, params).theta)


# ============================================================================
# TEST SUITE 1: Eigenvalues
# ============================================================================


class TestEigenvalues:
    """Test suite for lambda_l(y)."""

    @pytest.mark.parametrize("n,beta,y", [(1, 0.0, 0.4), (3, 0.3, 0.2), (5, 1.7, 0.05)])
    def test_closed_matches_direct(self, n, beta, y):
        """Test the aliased series against the node sum for every l."""
        params = KernelParams(h=1.0, beta=beta)
        grid = NodeGrid(n=n, y=y)
        scale = direct_sum_scale(grid, params)
        for l in range(1, 2 * n + 1):
            closed = lambda_closed(l, grid, params)
            direct = lambda_direct(l, grid, params)
            assert abs(closed - direct) <= 1e-10 * max(abs(closed), scale)

    def test_index_range(self):
        """Test that l outside 1..2n is rejected."""
        grid = NodeGrid(n=2, y=0.1)
        with pytest.raises(InvalidInputError, match="l must lie"):
            lambda_closed(0, grid, KernelParams(h=1.0))
        with pytest.raises(InvalidInputError, match="l must lie"):
            lambda_closed(5, grid, KernelParams(h=1.0))

    def test_normalized_matches_unscaled(self):
        """Test mu_j = (n/psi(n)) q^j lambda_{n-j} at a moderate n."""
        params = KernelParams(h=0.8, beta=0.4)
        grid = NodeGrid(n=4, y=0.3)
        eig = normalized_eigenvalues(grid, params)
        scale = 4 / psi(4, params)
        for j in range(4):
            expected = scale * params.q**j * lambda_closed(4 - j, grid, params)
            assert abs(eig.mu[j] - expected) <= 1e-10 * abs(expected)

    def test_normalized_decomposition(self):
        """Test mu_j exp(ijy) = lead_j s + r_j and R = |mu| - lead."""
        params = KernelParams(h=1.0, beta=0.5)
        grid = NodeGrid(n=6, y=0.2)
        eig = normalized_eigenvalues(grid, params)
        j = np.arange(6)
        np.testing.assert_allclose(
            eig.mu * np.exp(1j * j * grid.y), eig.lead * eig.s + eig.r, atol=1e-13
        )
        np.testing.assert_allclose(eig.big_r, np.abs(eig.mu) - eig.lead, atol=1e-13)


# ============================================================================
# TEST SUITE 2: Fundamental Spline
# ============================================================================


class TestFundamentalSpline:
    """Test suite for build_fundamental_spline."""

    @pytest.mark.parametrize("n,beta,y", [(2, 0.0, 0.3), (3, 0.5, 0.1), (4, 1.2, 0.6)])
    def test_interpolates_delta(self, n, beta, y):
        """Test that the spline is 1 at y_0 and 0 at the other shifted nodes."""
        params = KernelParams(h=1.0, beta=beta)
        grid = NodeGrid(n=n, y=y)
        system = build_fundamental_spline(grid, params)
        expected = np.zeros(2 * n)
        expected[0] = 1.0
        np.testing.assert_allclose(system.value(grid.shifted_nodes), expected, atol=1e-9)

    def test_coefficients_sum_to_zero(self):
        """Test sum alpha_k = 0 and alpha_0 = 1/(2n)."""
        system = build_fundamental_spline(NodeGrid(n=3, y=0.2), KernelParams(h=1.0, beta=0.3))
        assert system.alpha[0] == pytest.approx(1 / 6)
        assert abs(np.sum(system.alpha[1:])) < 1e-12

    def test_derivative_pieces(self):
        """Test the step-function view of the derivative."""
        system = build_fundamental_spline(NodeGrid(n=2, y=0.3), KernelParams(h=1.0))
        pieces = derivative_pieces(system)
        assert len(pieces.values) == 4
        np.testing.assert_allclose(pieces.values, derivative_from_coefficients(system))


# ============================================================================
# TEST SUITE 3: Derivative Representations
# ============================================================================


class TestDerivativeForms:
    """Test suite for the midpoint values of the (psi,beta)-derivative."""

    @pytest.mark.parametrize("beta", [0.0, 0.5, 1.0])
    @pytest.mark.parametrize("n", [6, 81])
    def test_forms_agree_at_y0(self, n, beta):
        """Test that the eigenvalue, P_q and gamma forms agree at y0."""
        params = KernelParams(h=1.0, beta=beta)
        rep = derivative_representation(y0_grid(n, params), params)
        np.testing.assert_allclose(rep.spsi_v0, rep.sp_psi, atol=1e-9)
        np.testing.assert_allclose(rep.sp_psi, rep.sp_phi, atol=1e-9)

    def test_coefficient_form_agrees(self):
        """Test the spectral forms against the spline coefficients."""
        params = KernelParams(h=1.0, beta=0.5)
        grid = y0_grid(4, params)
        spectral = derivative_midpoint_values(grid, params, form="spsi_v0")
        coefficients = derivative_midpoint_values(grid, params, form="coefficients")
        np.testing.assert_allclose(spectral, coefficients, atol=1e-8)

    def test_unknown_form(self):
        """Test that an unknown form name is rejected."""
        with pytest.raises(InvalidInputError, match="unknown derivative form"):
            derivative_midpoint_values(NodeGrid(n=2, y=0.1), KernelParams(h=1.0), form="raw")

    def test_alternation(self):
        """Test the (-1)^(k+1) sequence."""
        rep = derivative_representation(NodeGrid(n=2, y=0.1), KernelParams(h=1.0))
        np.testing.assert_array_equal(rep.alternation, [1, -1, 1, -1])

    def test_eval_at_point(self):
        """Test the unscaled derivative at a point inside interval 2."""
        params = KernelParams(h=1.0, beta=0.5)
        grid = y0_grid(3, params)
        t = grid.midpoints[1] + 0.1
        expected = derivative_representation(grid, params).spsi_v0[1] * derivative_unit(
            3, params
        )
        assert eval_derivative_repr(t, grid, params) == pytest.approx(expected, rel=1e-14)

    def test_eval_on_node_raises(self):
        """Test that evaluating on a node is a domain error."""
        grid = NodeGrid(n=3, y=0.1)
        with pytest.raises(DomainError):
            eval_derivative_repr(math.pi / 3, grid, KernelParams(h=1.0))

    def test_extremal_grid_clamps_shift(self):
        """Test that theta close to 1 keeps y0 inside [0, pi/n)."""
        grid = extremal_grid(4, 1.0 - 1e-17)
        assert grid.y < math.pi / 4


# ============================================================================
# TEST SUITE 4: Gamma Bounds
# ============================================================================


class TestGammaBreakdown:
    """Test suite for gamma_breakdown and lemma3_bound."""

    def test_lemma3_bound_formula(self):
        """Test the bound against its formula at n = 81, q = 1/e."""
        q = math.exp(-1.0)
        expected = 37 * q**9 / (5 * (1 - q)) + q / (1 - q) ** 2 * min(
            160 / (27 * 72), 8 / (243 - 63)
        )
        assert lemma3_bound(81, q) == pytest.approx(expected, rel=1e-14)

    @pytest.mark.parametrize("h,n", [(1.0, 81), (2.0, 9)])
    @pytest.mark.parametrize("beta", [0.0, 0.5, 1.0])
    def test_bound_holds_at_n_h(self, h, n, beta):
        """Test sum |gamma| <= bound and every internal estimate at n_h."""
        params = KernelParams(h=h, beta=beta)
        report = gamma_breakdown(y0_grid(n, params), params)
        assert report.bound_holds
        assert all(report.internal_bounds.values()), report.internal_bounds
        assert report.n_ok
        assert report.gamma_by_midpoint.shape == (5, 2 * n)
        assert 1 <= report.worst_midpoint <= 2 * n

    def test_eliminated_cosine_used_at_y0(self):
        """Test that the representation built with the eliminated cosine matches."""
        params = KernelParams(h=1.0, beta=0.5)
        sol = solve_theta(81, params)
        grid = extremal_grid(81, sol.theta)
        rep = derivative_representation(
            grid, params, SeriesConfig(), root_phase_cosine(81, params, sol.theta)
        )
        np.testing.assert_allclose(rep.spsi_v0, rep.sp_phi, atol=1e-9)
