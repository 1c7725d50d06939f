"""
Unit tests for the analytic_widths.domain models and configuration helpers.

Covers parameter validation, derived properties and the cross-field
invariants the report models enforce.
"""

import math

import numpy as np
import pytest
from pydantic import ValidationError

from analytic_widths import config
from analytic_widths.domain import (
    KernelParams,
    NodeGrid,
    PiecewiseConstant,
    SeriesConfig,
    ThetaSolution,
    ThresholdBranch,
    ThresholdReport,
    WidthReport,
)
from analytic_widths.exceptions import DomainError, ToleranceUnreachableError

# ============================================================================
# TEST SUITE 1: Kernel Parameters
# ============================================================================


class TestKernelParams:
    """Test suite for KernelParams validation and derived values."""

    def test_q_is_exp_minus_h(self):
        """Test that q equals exp(-h)."""
        params = KernelParams(h=1.0, beta=0.5)
        assert params.q == pytest.approx(math.exp(-1.0), rel=1e-15)

    @pytest.mark.parametrize("h", [0.0, -1.0, math.inf, math.nan, 701.0])
    def test_invalid_h_rejected(self, h):
        """Test that non-positive, non-finite and underflowing h are rejected."""
        with pytest.raises(ValidationError):
            KernelParams(h=h)

    def test_non_finite_beta_rejected(self):
        """Test that beta must be finite."""
        with pytest.raises(ValidationError, match="beta must be finite"):
            KernelParams(h=1.0, beta=math.inf)

    def test_half_phase_is_periodic_in_beta(self):
        """Test that beta and beta + 4 give the same phase."""
        a = KernelParams(h=1.0, beta=0.3).half_phase
        b = KernelParams(h=1.0, beta=4.3).half_phase
        assert a == pytest.approx(b, abs=1e-14)

    def test_integer_beta_detection(self):
        """Test integer and fractional beta detection."""
        assert KernelParams(h=1.0, beta=2.0).is_integer_beta
        assert not KernelParams(h=1.0, beta=0.5).is_integer_beta

    def test_params_are_frozen(self):
        """Test that KernelParams cannot be mutated."""
        params = KernelParams(h=1.0)
        with pytest.raises(ValidationError):
            params.h = 2.0


# ============================================================================
# TEST SUITE 2: Series Configuration
# ============================================================================


class TestSeriesConfig:
    """Test suite for the truncation policy."""

    def test_defaults(self):
        """Test that defaults come from the environment-driven config."""
        cfg = SeriesConfig()
        assert cfg.abs_tol == config.DEFAULT_ABS_TOL
        assert cfg.max_terms == config.DEFAULT_MAX_TERMS

    def test_non_positive_tolerance_rejected(self):
        """Test that a zero tolerance is a validation error."""
        with pytest.raises(ValidationError, match="abs_tol must be positive"):
            SeriesConfig(abs_tol=0.0)

    def test_unreachable_tolerance_raises_numerical_error(self):
        """Test that a tolerance below binary64 resolution is a numerical error."""
        with pytest.raises(ToleranceUnreachableError, match="unreachable"):
            SeriesConfig(abs_tol=1e-19)

    def test_max_terms_must_be_positive(self):
        """Test that max_terms below 1 is rejected."""
        with pytest.raises(ValidationError, match="max_terms"):
            SeriesConfig(max_terms=0)


# ============================================================================
# TEST SUITE 3: Node Grids and Step Functions
# ============================================================================


class TestNodeGrid:
    """Test suite for the uniform 2n-point partition."""

    def test_nodes_and_midpoints(self):
        """Test node and midpoint placement."""
        grid = NodeGrid(n=2, y=0.1)
        np.testing.assert_allclose(grid.nodes, np.arange(5) * math.pi / 2)
        np.testing.assert_allclose(
            grid.midpoints, [math.pi / 4, 3 * math.pi / 4, 5 * math.pi / 4, 7 * math.pi / 4]
        )
        np.testing.assert_allclose(grid.shifted_nodes, np.arange(4) * math.pi / 2 + 0.1)

    def test_shift_must_be_below_step(self):
        """Test that y outside [0, pi/n) is rejected."""
        with pytest.raises(ValidationError, match="y must lie"):
            NodeGrid(n=3, y=math.pi / 3)
        with pytest.raises(ValidationError, match="y must lie"):
            NodeGrid(n=3, y=-0.01)

    def test_interval_index(self):
        """Test interval lookup, including points beyond one period."""
        grid = NodeGrid(n=2)
        assert grid.interval_index(0.1) == 1
        assert grid.interval_index(math.pi - 0.1) == 2
        assert grid.interval_index(2 * math.pi - 0.1) == 4
        assert grid.interval_index(2 * math.pi + 0.1) == 1
        assert grid.interval_index(-0.1) == 4

    def test_interval_index_on_node_raises(self):
        """Test that a node is outside the derivative's domain."""
        grid = NodeGrid(n=2)
        with pytest.raises(DomainError, match="lies on a node"):
            grid.interval_index(math.pi / 2)

    def test_piecewise_constant_shape(self):
        """Test that breakpoints and values must match up."""
        pieces = PiecewiseConstant(breakpoints=[0.0, 1.0, 2.0], values=[1.0, -1.0])
        assert pieces.pieces() == [(0.0, 1.0, 1.0), (1.0, 2.0, -1.0)]
        with pytest.raises(ValidationError, match="one more breakpoint"):
            PiecewiseConstant(breakpoints=[0.0, 1.0], values=[1.0, -1.0])
        with pytest.raises(ValidationError, match="strictly increasing"):
            PiecewiseConstant(breakpoints=[0.0, 0.0, 1.0], values=[1.0, -1.0])


# ============================================================================
# TEST SUITE 4: Report Invariants
# ============================================================================


class TestReports:
    """Test suite for cross-field checks on the report models."""

    def _theta(self):
        return ThetaSolution(
            theta=0.5, residual=0.0, bracket=(0.25, 0.75), unique=True, sign_changes=1
        )

    def test_theta_range(self):
        """Test that theta must lie in [0, 1)."""
        with pytest.raises(ValidationError, match="theta must lie"):
            ThetaSolution(
                theta=1.0, residual=0.0, bracket=(0.75, 1.25), unique=True, sign_changes=1
            )

    def test_valid_width_requires_valid_e(self):
        """Test that the width identity cannot hold without the E_n identity."""
        with pytest.raises(ValidationError, match="valid_width requires valid_E"):
            WidthReport(
                n=3,
                h=1.0,
                beta=0.0,
                value=0.1,
                value_over_psi=1.2,
                theta=self._theta(),
                n_star=3,
                n_h=81,
                valid_E=False,
                valid_width=True,
                gamma_n=0.0,
            )

    def test_threshold_order(self):
        """Test that n_h must be at least 9 and at least n_star."""
        with pytest.raises(ValidationError, match="must be >= 9"):
            ThresholdReport(
                h=1.0,
                n_star=3,
                n_h=5,
                branch=ThresholdBranch.SCANNED,
                rho_condition_met=False,
                persistent=True,
            )

    def test_threshold_report_allows_missing_n_h(self):
        """Test that an unreachable n_h is recorded as None."""
        report = ThresholdReport(
            h=0.3,
            n_star=200,
            n_h=None,
            branch=ThresholdBranch.SCANNED,
            rho_condition_met=False,
            persistent=True,
        )
        assert report.n_h is None


# ============================================================================
# TEST SUITE 5: Environment Helpers
# ============================================================================


class TestConfigHelpers:
    """Test suite for the environment readers in analytic_widths.config."""

    def test_positive_int_from_env(self, monkeypatch):
        """Test that a valid integer is taken from the environment."""
        monkeypatch.setenv("WIDTHS_TEST_INT", "12")
        assert config._get_positive_int("WIDTHS_TEST_INT", 3) == 12

    @pytest.mark.parametrize("raw", ["0", "-4", "many"])
    def test_positive_int_falls_back(self, monkeypatch, raw):
        """Test that invalid integers fall back to the default."""
        monkeypatch.setenv("WIDTHS_TEST_INT", raw)
        assert config._get_positive_int("WIDTHS_TEST_INT", 3) == 3

    def test_abs_tol_clamped_to_minimum(self, monkeypatch):
        """Test that an unreachable tolerance is raised to the minimum."""
        monkeypatch.setenv("WIDTHS_ABS_TOL", "1e-30")
        assert config._get_abs_tol() == config.MIN_ABS_TOL

    def test_abs_tol_invalid_falls_back(self, monkeypatch):
        """Test that garbage falls back to the default tolerance."""
        monkeypatch.setenv("WIDTHS_ABS_TOL", "tiny")
        assert config._get_abs_tol() == 1e-14

    def test_log_level_validation(self, monkeypatch):
        """Test that unknown log levels fall back to INFO."""
        monkeypatch.setenv("WIDTHS_LOG_LEVEL", "chatty")
        assert config._get_log_level() == "INFO"
        monkeypatch.setenv("WIDTHS_LOG_LEVEL", "debug")
        assert config._get_log_level() == "DEBUG"
