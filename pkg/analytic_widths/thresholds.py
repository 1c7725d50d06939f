"""
Explicit validity thresholds for the width formulas.

Two integer thresholds govern everything downstream:
- n_star(h): from which n on the best-approximation formula is exact
- n_h(h): from which n on the width formulas are exact (always >= 9)

Both are found by scanning n upward in vectorized blocks. Scans stop with
ThresholdUnreachableError at WIDTHS_SCAN_CAP; the thresholds grow without
bound as h -> 0 and a silent cap would hide that. locate_n_h brackets n_h
by bisection instead and has no cap short of 2^52.

Environment Variables:
    WIDTHS_SCAN_CAP: Largest n examined by the scans (default: 1000000)
"""

import math
from functools import lru_cache
from typing import Callable, Optional, Union

import numpy as np
from loguru import logger
from scipy.optimize import brentq

from analytic_widths.config import SCAN_CAP
from analytic_widths.domain.kernel import KernelParams
from analytic_widths.domain.reports import ThresholdBranch, ThresholdReport
from analytic_widths.exceptions import InvalidInputError, ThresholdUnreachableError
from analytic_widths.series_core import epsilon_n

LN_TEN_THIRDS = math.log(10.0 / 3.0)
RHO_INTEGER_BETA = 0.2
RHO_FRACTIONAL_BETA = 0.193864
PERSISTENCE_WINDOW = 50
N_H_MIN = 9
# locate_n_h stops here; n is exact as float64 below 2^53
_LOCATE_LIMIT = 1 << 52

IntArray = Union[int, np.ndarray]


def _as_float_array(n: IntArray) -> np.ndarray:
    return np.asarray(n, dtype=np.float64)


def star_condition_holds(n: IntArray, h: float) -> np.ndarray:
    """
    Inequality defining n_star on its scanned branch, vectorized over n.

    (1-q)^2 >= (5+3q^2)/(1-q^2) * A^(2n)/sqrt(1-A^(2n)) + (2+q^(2n)) q^(2n),
    with A = (1+q^2)/2.
    """
    n_f = _as_float_array(n)
    q2 = math.exp(-2.0 * h)
    log_a = math.log1p((q2 - 1.0) / 2.0)
    a_pow = np.exp(2.0 * n_f * log_a)
    one_minus_a_pow = -np.expm1(2.0 * n_f * log_a)
    q_pow = np.exp(-2.0 * n_f * h)
    rhs = (5.0 + 3.0 * q2) / (-math.expm1(-2.0 * h)) * a_pow / np.sqrt(
        one_minus_a_pow
    ) + (2.0 + q_pow) * q_pow
    return (-math.expm1(-h)) ** 2 >= rhs


def p_q_lower_bound(q: float) -> float:
    """
    Lower bound of P_q over the whole line, also the right side of the n_h test.

    (1/2 + 2q/((1+q^2)(1-q))) ((1-q)/(1+q))^(4/(1-q^2))
    """
    one_minus_q = 1.0 - q
    return (0.5 + 2.0 * q / ((1.0 + q * q) * one_minus_q)) * (
        one_minus_q / (1.0 + q)
    ) ** (4.0 / (1.0 - q * q))


def _gamma_condition_lhs(
    n: IntArray, q: float, head: float, tail_numerator: float
) -> np.ndarray:
    n_f = _as_float_array(n)
    root = np.sqrt(n_f)
    one_minus_q = 1.0 - q
    tail = np.minimum(tail_numerator / (n_f - root), 8.0 / (3.0 * n_f - 7.0 * root))
    return head / one_minus_q * q**root + q / one_minus_q**2 * tail


def gamma_condition_holds(n: IntArray, q: float) -> np.ndarray:
    """
    The inequality that defines n_h, in terms of q = exp(-h), for n >= 9.

    37/(5(1-q)) q^sqrt(n) + q/(1-q)^2 min{160/(27(n-sqrt n)), 8/(3n-7 sqrt n)}
        <= (1/2 + 2q/((1+q^2)(1-q))) ((1-q)/(1+q))^(4/(1-q^2))
    """
    lhs = _gamma_condition_lhs(n, q, 37.0 / 5.0, 160.0 / 27.0)
    return lhs <= p_q_lower_bound(q)


def check_relaxed_gamma_condition(n: IntArray, q: float) -> np.ndarray:
    """Weaker form of the n_h inequality (constants 43/10 and 160/57)."""
    lhs = _gamma_condition_lhs(n, q, 43.0 / 10.0, 160.0 / 57.0)
    return lhs <= p_q_lower_bound(q)


def _scan_first(
    predicate: Callable[[np.ndarray], np.ndarray], start: int, h: float, label: str
) -> int:
    """First n >= start where predicate holds, scanning in growing blocks."""
    lo = start
    block = 1024
    while lo <= SCAN_CAP:
        hi = min(lo + block, SCAN_CAP + 1)
        n = np.arange(lo, hi)
        mask = predicate(n)
        if mask.any():
            found = int(n[int(np.argmax(mask))])
            logger.debug(f"{label}(h={h:g}) = {found}")
            return found
        lo = hi
        block = min(block * 2, 1 << 18)
    raise ThresholdUnreachableError(
        f"{label}(h={h:g}) exceeds the scan cap {SCAN_CAP}", h=h, cap=SCAN_CAP
    )


def _require_positive_h(h: float) -> None:
    if not (math.isfinite(h) and h > 0):
        raise InvalidInputError(f"h must be positive, got {h}")


@lru_cache(maxsize=1024)
def n_star(h: float) -> int:
    """
    Smallest n from which the best-approximation formula is exact.

    Returns 1 directly when h >= ln(10/3); otherwise scans n = 1, 2, ...
    """
    _require_positive_h(h)
    if h >= LN_TEN_THIRDS:
        return 1
    return _scan_first(lambda n: star_condition_holds(n, h), 1, h, "n_star")


@lru_cache(maxsize=1024)
def n_h(h: float) -> int:
    """Smallest n >= 9 from which the width formulas are exact."""
    _require_positive_h(h)
    q = math.exp(-h)
    return _scan_first(lambda n: gamma_condition_holds(n, q), N_H_MIN, h, "n_h")


@lru_cache(maxsize=1024)
def locate_n_h(h: float) -> int:
    """
    n_h without the scan cap, by doubling and bisection.

    For n >= 9 the left side of the n_h inequality decreases in n (q^sqrt(n)
    falls, n - sqrt(n) and 3n - 7 sqrt(n) grow), so the first n where it
    holds can be bracketed.
    """
    _require_positive_h(h)
    q = math.exp(-h)

    def holds(n: int) -> bool:
        return bool(gamma_condition_holds(n, q))

    if holds(N_H_MIN):
        return N_H_MIN
    lo, hi = N_H_MIN, 2 * N_H_MIN
    while not holds(hi):
        if hi > _LOCATE_LIMIT:
            raise ThresholdUnreachableError(
                f"n_h(h={h:g}) exceeds {_LOCATE_LIMIT}", h=h, cap=_LOCATE_LIMIT
            )
        lo, hi = hi, 2 * hi
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if holds(mid):
            hi = mid
        else:
            lo = mid
    logger.debug(f"locate_n_h(h={h:g}) = {hi}")
    return hi


def rho_equation(rho: float) -> float:
    """Left side minus one of 2r + (1+3r) r^2 / ((1-r) sqrt(1-2r^2)) = 1."""
    return (
        2.0 * rho
        + (1.0 + 3.0 * rho) * rho**2 / ((1.0 - rho) * math.sqrt(1.0 - 2.0 * rho**2))
        - 1.0
    )


@lru_cache(maxsize=1)
def rho_star() -> float:
    """Unique root in (0, 1) of the ratio equation, about 0.3253678."""
    return brentq(rho_equation, 0.0, 0.5, xtol=1e-16, rtol=4 * np.finfo(float).eps)


def rho_for_beta(beta: float) -> float:
    return RHO_INTEGER_BETA if float(beta).is_integer() else RHO_FRACTIONAL_BETA


def cosh_ratio(h: float) -> float:
    """cosh(h)/cosh(2h), the largest of the ratios cosh(kh)/cosh((k+1)h)."""
    q = math.exp(-h)
    return q * (1.0 + q * q) / (1.0 + q**4)


def check_classical_range(h: float, beta: float) -> bool:
    """True iff cosh(h)/cosh(2h) <= rho(beta): widths known for every n."""
    _require_positive_h(h)
    return cosh_ratio(h) <= rho_for_beta(beta)


def classical_range_threshold(beta: float) -> float:
    """Smallest h at which check_classical_range(h, beta) becomes true."""
    rho = rho_for_beta(beta)
    return brentq(lambda h: cosh_ratio(h) - rho, 0.1, 10.0, xtol=1e-13)


def check_umova_z(n: int, q: float) -> bool:
    """q^n/(1-q^(2n)) <= 7 q^sqrt(n) / (37 n^2), compared in logarithms."""
    if n < 1:
        raise InvalidInputError(f"n must be at least 1, got {n}")
    if not 0.0 < q < 1.0:
        raise InvalidInputError(f"q must lie in (0, 1), got {q}")
    log_q = math.log(q)
    lhs = n * log_q - math.log(-math.expm1(2 * n * log_q))
    rhs = math.log(7.0 / 37.0) + math.sqrt(n) * log_q - 2.0 * math.log(n)
    return lhs <= rhs


def check_umova_n0(n: int, params: KernelParams) -> bool:
    """
    (1-q)^2 >= (5+3q^2)/(1-q^2) * B/sqrt(1-B) + eps_n (2 + eps_n),
    B = ((1+q^2)/2)^(2n), eps_n = epsilon_n(n).
    """
    if n < 1:
        raise InvalidInputError(f"n must be at least 1, got {n}")
    h = params.h
    q2 = math.exp(-2.0 * h)
    log_a = math.log1p((q2 - 1.0) / 2.0)
    b = math.exp(2 * n * log_a)
    one_minus_b = -math.expm1(2 * n * log_a)
    eps = epsilon_n(n, params)
    rhs = (5.0 + 3.0 * q2) / (-math.expm1(-2.0 * h)) * b / math.sqrt(one_minus_b)
    return (-math.expm1(-h)) ** 2 >= rhs + eps * (2.0 + eps)


def _window_holds(predicate: Callable[[np.ndarray], np.ndarray], start: int) -> bool:
    return bool(predicate(np.arange(start, start + PERSISTENCE_WINDOW + 1)).all())


def threshold_report(h: float, beta: Optional[float] = None) -> ThresholdReport:
    """Collect n_star, n_h and the side conditions at one h."""
    _require_positive_h(h)
    q = math.exp(-h)
    star = n_star(h)
    branch = ThresholdBranch.DIRECT if h >= LN_TEN_THIRDS else ThresholdBranch.SCANNED
    persistent = True
    if branch is ThresholdBranch.SCANNED:
        persistent = _window_holds(lambda n: star_condition_holds(n, h), star)

    width_threshold: Optional[int]
    try:
        width_threshold = n_h(h)
        persistent = persistent and _window_holds(
            lambda n: gamma_condition_holds(n, q), width_threshold
        )
    except ThresholdUnreachableError as e:
        logger.warning(f"n_h unavailable: {e}")
        width_threshold = None

    if not persistent:
        logger.warning(f"threshold inequality not persistent over window at h={h:g}")

    return ThresholdReport(
        h=h,
        n_star=star,
        n_h=width_threshold,
        branch=branch,
        rho_condition_met=cosh_ratio(h) <= rho_star(),
        persistent=persistent,
        beta=beta,
        classical_range=None if beta is None else check_classical_range(h, beta),
    )
