"""
Unit tests for the analytic_widths.series_core module.

Every series is compared with a plain summation written out in the test,
using math.cosh directly, so the overflow-free evaluation paths are checked
against the textbook formulas.
"""

import math

import numpy as np
import pytest

from analytic_widths.domain import KernelParams, SeriesConfig
from analytic_widths.exceptions import InvalidInputError, SeriesTruncationError
from analytic_widths.series_core import (
    cosine_series,
    epsilon_n,
    eval_H,
    eval_P_q,
    eval_Psi_beta1,
    psi,
    psi_array,
    psi_ratio,
    tail_index,
    truncation_index,
)
from analytic_widths.thresholds import p_q_lower_bound


def direct_H(t, h, beta, terms=80):
    return sum(math.cos(k * t - beta * math.pi / 2) / math.cosh(k * h) for k in range(1, terms))


def direct_Psi(t, h, beta, terms=80):
    return sum(
        math.cos(k * t - (beta + 1) * math.pi / 2) / (k * math.cosh(k * h))
        for k in range(1, terms)
    )


# ============================================================================
# TEST SUITE 1: Coefficient Sequence
# ============================================================================


class TestPsi:
    """Test suite for psi(k) = 1/cosh(kh)."""

    def test_matches_cosh(self):
        """Test agreement with 1/cosh on moderate arguments."""
        params = KernelParams(h=0.7)
        for k in (1, 2, 5, 20):
            assert psi(k, params) == pytest.approx(1.0 / math.cosh(0.7 * k), rel=1e-14)

    def test_exact_value_at_ln_two(self):
        """Test psi(1) = 0.8 when cosh(h) = 5/4."""
        assert psi(1, KernelParams(h=math.log(2.0))) == pytest.approx(0.8, rel=1e-15)

    def test_no_overflow_for_huge_kh(self):
        """Test that cosh overflow territory gives 0 instead of an error."""
        assert psi(10_000, KernelParams(h=1.0)) == 0.0

    def test_index_must_be_positive(self):
        """Test that k = 0 is rejected."""
        with pytest.raises(InvalidInputError, match="k >= 1"):
            psi(0, KernelParams(h=1.0))

    def test_array_matches_scalar(self):
        """Test that the vectorized form agrees with the scalar one."""
        params = KernelParams(h=1.3)
        k = np.arange(1, 30)
        np.testing.assert_allclose(
            psi_array(k, 1.3), [psi(int(i), params) for i in k], rtol=1e-15
        )

    def test_ratio(self):
        """Test psi(k+1)/psi(k) in closed form."""
        params = KernelParams(h=0.4)
        for k in (1, 3, 10):
            expected = math.cosh(0.4 * k) / math.cosh(0.4 * (k + 1))
            assert psi_ratio(k, params) == pytest.approx(expected, rel=1e-14)


# ============================================================================
# TEST SUITE 2: Truncation
# ============================================================================


class TestTruncation:
    """Test suite for the geometric tail bound."""

    @pytest.mark.parametrize("h", [0.1, 0.5, 1.0, 3.0])
    def test_tail_bound_met(self, h):
        """Test that the discarded tail is below abs_tol."""
        cfg = SeriesConfig(abs_tol=1e-12)
        k_tail = tail_index(h, cfg)
        q = math.exp(-h)
        assert 2 * q ** (k_tail + 1) / (1 - q) < 1e-12

    def test_truncation_index_uses_h(self):
        """Test that the class-level helper forwards h."""
        cfg = SeriesConfig(abs_tol=1e-10)
        assert truncation_index(KernelParams(h=0.5), cfg) == tail_index(0.5, cfg)

    def test_max_terms_exceeded(self):
        """Test that tiny h with a small cap raises a truncation error."""
        cfg = SeriesConfig(abs_tol=1e-14, max_terms=100)
        with pytest.raises(SeriesTruncationError, match="max_terms=100"):
            tail_index(0.01, cfg)


# ============================================================================
# TEST SUITE 3: Kernel Series
# ============================================================================


class TestKernelSeries:
    """Test suite for H, its Bernoulli integral and P_q."""

    @pytest.mark.parametrize("beta", [0.0, 0.5, 1.0, 1.7])
    def test_eval_H_matches_direct_sum(self, beta):
        """Test H(t) against direct summation."""
        params = KernelParams(h=1.0, beta=beta)
        for t in (0.0, 0.3, 2.0, -1.1):
            assert eval_H(t, params) == pytest.approx(direct_H(t, 1.0, beta), abs=1e-13)

    def test_eval_H_vanishes_for_beta_one(self):
        """Test that the phase kills every term at t = 0, beta = 1."""
        for h in (0.3, 1.0, 4.0):
            assert abs(eval_H(0.0, KernelParams(h=h, beta=1.0))) < 1e-15

    def test_eval_H_at_zero(self):
        """Test sum_k 1/cosh(k) = 1.07112..."""
        assert eval_H(0.0, KernelParams(h=1.0)) == pytest.approx(1.07112, abs=1e-5)

    def test_eval_H_vectorized(self):
        """Test that an array of t returns an array of the same shape."""
        t = np.linspace(0, 2 * math.pi, 7).reshape(7, 1)
        values = eval_H(t, KernelParams(h=1.0))
        assert values.shape == (7, 1)
        assert values[0, 0] == pytest.approx(values[-1, 0], abs=1e-12)

    @pytest.mark.parametrize("beta", [0.0, 0.3, 1.0])
    def test_eval_Psi_beta1_matches_direct_sum(self, beta):
        """Test the Bernoulli integral against direct summation."""
        params = KernelParams(h=1.0, beta=beta)
        for t in (0.1, 1.0, 4.0):
            assert eval_Psi_beta1(t, params) == pytest.approx(
                direct_Psi(t, 1.0, beta), abs=1e-13
            )

    def test_eval_Psi_beta1_at_zero(self):
        """Test sum_k 1/(k cosh k) = 0.827126... via the zero phase at beta = -1."""
        assert eval_Psi_beta1(0.0, KernelParams(h=1.0, beta=-1.0)) == pytest.approx(
            0.8271262, abs=1e-6
        )

    def test_eval_P_q_at_zero(self):
        """Test P_{1/2}(0) = 2.266..."""
        assert eval_P_q(0.0, 0.5) == pytest.approx(2.2662, abs=1e-3)

    def test_eval_P_q_matches_cosh_form(self):
        """Test that 2/(q^j + q^-j) is 1/cosh(j h)."""
        q = 0.3
        h = -math.log(q)
        for t in (0.2, 1.5, 3.0):
            expected = 0.5 + sum(
                2 * math.cos(j * t) / (q**j + q ** (-j)) for j in range(1, 60)
            )
            assert eval_P_q(t, q) == pytest.approx(expected, abs=1e-13)
            assert eval_P_q(t, q) == pytest.approx(0.5 + direct_H(t, h, 0.0), abs=1e-13)

    @pytest.mark.parametrize("q", [0.9, 0.95])
    def test_eval_P_q_near_one_matches_direct_sum(self, q):
        """Test P_q for q near 1 against the cosine series where P_q is not small."""
        h = -math.log(q)
        for t in (0.0, 0.7, 1.9):
            expected = 0.5 + sum(math.cos(j * t) / math.cosh(j * h) for j in range(1, 700))
            assert eval_P_q(t, q) == pytest.approx(expected, abs=1e-12)

    @pytest.mark.parametrize("q", [0.9, 0.95])
    def test_eval_P_q_positive_at_pi(self, q):
        """Test that P_q(pi) stays positive and above its lower bound for q near 1."""
        h = -math.log(q)
        x = np.arange(256) * 2.0 * math.pi / 256
        values = eval_P_q(x, q)
        assert np.all(values > 0)
        assert np.min(values) >= p_q_lower_bound(q)
        # leading pair of the sech sum at t = pi
        leading = math.pi / h / math.cosh(math.pi**2 / (2 * h))
        assert eval_P_q(math.pi, q) == pytest.approx(leading, rel=1e-9)

    def test_eval_P_q_branches_agree(self):
        """Test that the evaluations on both sides of h = pi agree with the cosine series."""
        for q in (0.045, 0.04):
            h = -math.log(q)
            for t in (0.0, 1.0, math.pi):
                expected = 0.5 + direct_H(t, h, 0.0, terms=40)
                assert eval_P_q(t, q) == pytest.approx(expected, abs=1e-14)

    @pytest.mark.parametrize("q", [0.0, 1.0, -0.2])
    def test_eval_P_q_rejects_bad_q(self, q):
        """Test that q outside (0, 1) is rejected."""
        with pytest.raises(InvalidInputError, match="q must lie"):
            eval_P_q(0.0, q)

    def test_cosine_series_blocks(self):
        """Test that block processing does not change results."""
        freqs = np.arange(1, 2001, dtype=np.float64)
        coeffs = 1.0 / freqs**2
        t = np.linspace(0, 1, 1500)
        expected = np.cos(np.outer(t, freqs)) @ coeffs
        np.testing.assert_allclose(cosine_series(t, coeffs, freqs, 0.0), expected, atol=1e-12)


# ============================================================================
# TEST SUITE 4: Ratio Deviation
# ============================================================================


class TestEpsilon:
    """Test suite for epsilon_n."""

    def test_half(self):
        """Test epsilon_1 at q = 1/2."""
        params = KernelParams(h=math.log(2.0))
        assert epsilon_n(1, params) == pytest.approx(0.0882353, abs=1e-7)

    def test_is_supremum_over_tail(self):
        """Test that epsilon_n bounds every later ratio deviation."""
        params = KernelParams(h=0.6)
        eps = epsilon_n(4, params)
        deviations = [abs(psi_ratio(k, params) - params.q) for k in range(4, 40)]
        assert max(deviations) == pytest.approx(eps, rel=1e-12)

    def test_requires_positive_n(self):
        """Test that n = 0 is rejected."""
        with pytest.raises(InvalidInputError, match="n >= 1"):
            epsilon_n(0, KernelParams(h=1.0))
