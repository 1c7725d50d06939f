"""
Extremal function of the width problem and the exact width values.

Phi(t) = (H * sign sin(n.))(t) = (4/pi) sum_nu psi((2nu+1)n)/(2nu+1) sin((2nu+1)nt - beta*pi/2)

Its sup-norm is attained at y0 = theta*pi/n, where theta in [0, 1) solves

    sum_nu psi((2nu+1)n) cos((2nu+1) theta pi - beta*pi/2) = 0.

That equation is always solved divided by psi(n), with weights
rho_nu = psi((2nu+1)n)/psi(n), so it stays well scaled when psi(n) underflows.
The same normalization gives the asymptotic remainder gamma_n and the
two-sided bounds without subtracting nearly equal numbers.
"""

import math
from dataclasses import dataclass
from typing import Dict, Optional

import numpy as np
from loguru import logger
from scipy.optimize import brentq

from analytic_widths.domain.kernel import KernelParams, SeriesConfig
from analytic_widths.domain.reports import (
    GAMMA_N_BOUND,
    ThetaSolution,
    TwoSidedBounds,
    WidthReport,
)
from analytic_widths.exceptions import (
    InvalidInputError,
    RootNotBracketedError,
    SeriesTruncationError,
    ThresholdUnreachableError,
)
from analytic_widths.series_core import ArrayLike, cosine_series, psi, psi_array
from analytic_widths.thresholds import n_h, n_star

SCAN_POINTS = 10_000
# roots this close to 1 are the root at 0 seen through the wrap
_WRAP_TOL = 1e-14
_NEWTON_STEPS = 3


@dataclass(frozen=True)
class _OddHarmonics:
    odd: np.ndarray  # 2nu + 1
    weights: np.ndarray  # psi((2nu+1)n) / psi(n)


def _require_n(n: int) -> None:
    if n < 1:
        raise InvalidInputError(f"n must be at least 1, got n={n}")


def _odd_harmonics(n: int, params: KernelParams, cfg: SeriesConfig) -> _OddHarmonics:
    """
    Odd harmonics needed so that sum_{nu>=N} rho_nu / q^(2n) < abs_tol.

    The remainder past nu = 0 is read in units of q^(2n), so the count covers
    the scaled tail and always includes nu = 1.
    """
    two_nh = 2.0 * n * params.h
    log_ratio = math.log(2.0 / ((-math.expm1(-two_nh)) * cfg.abs_tol))
    count = max(2, int(math.floor(log_ratio / two_nh)) + 2)
    if count > cfg.max_terms:
        raise SeriesTruncationError(
            f"odd-harmonic series needs {count} terms, more than max_terms={cfg.max_terms}"
        )
    nu = np.arange(count, dtype=np.float64)
    odd = 2.0 * nu + 1.0
    weights = (
        np.exp(-nu * two_nh)
        * (1.0 + math.exp(-two_nh))
        / (1.0 + np.exp(-odd * two_nh))
    )
    return _OddHarmonics(odd=odd, weights=weights)


def eval_Phi(
    t: ArrayLike, n: int, params: KernelParams, cfg: Optional[SeriesConfig] = None
) -> ArrayLike:
    """Extremal function Phi(t) = (4/pi) sum psi((2nu+1)n)/(2nu+1) sin((2nu+1)nt - beta*pi/2)."""
    _require_n(n)
    cfg = cfg or SeriesConfig()
    harmonics = _odd_harmonics(n, params, cfg)
    coeffs = 4.0 / math.pi * psi_array(harmonics.odd * n, params.h) / harmonics.odd
    # sin(x) = cos(x - pi/2)
    return cosine_series(
        t, coeffs, harmonics.odd * n, params.half_phase + math.pi / 2.0
    )


def _equation(theta: ArrayLike, harmonics: _OddHarmonics, phase: float) -> ArrayLike:
    return cosine_series(theta, harmonics.weights, harmonics.odd * math.pi, phase)


def _equation_slope(theta: float, harmonics: _OddHarmonics, phase: float) -> float:
    arg = harmonics.odd * math.pi * theta - phase
    return float(-math.pi * np.dot(harmonics.odd * harmonics.weights, np.sin(arg)))


def _sign_scan(harmonics: _OddHarmonics, phase: float) -> Dict[str, object]:
    """
    Count sign changes of the theta equation on [0, 1).

    The equation is anti-periodic with period 1, so the wrap compares the last
    sample with minus the first. Samples sit at cell centres, away from the
    symmetric roots 0 and 1/2.
    """
    grid = (np.arange(SCAN_POINTS) + 0.5) / SCAN_POINTS
    values = np.asarray(_equation(grid, harmonics, phase))
    positive = values > 0
    changes = int(np.count_nonzero(positive[1:] != positive[:-1]))
    changes += int(positive[-1] != (-values[0] > 0))
    return {"points": SCAN_POINTS, "sign_changes": changes, "min": float(values.min()),
            "max": float(values.max())}


def solve_theta(
    n: int, params: KernelParams, cfg: Optional[SeriesConfig] = None
) -> ThetaSolution:
    """
    Root theta_n in [0, 1) of the phase equation.

    The bracket starts at theta0 +- 0.25, where theta0 = frac((beta+1)/2) is
    the root of the dominant nu = 0 term, and widens in steps of 0.05. The
    root is located by Brent's method on the unwrapped axis, polished by
    Newton steps and then wrapped into [0, 1).

    Raises:
        RootNotBracketedError: If no sign change is found even at width 1/2
    """
    _require_n(n)
    cfg = cfg or SeriesConfig()
    harmonics = _odd_harmonics(n, params, cfg)
    phase = params.half_phase

    def f(theta: float) -> float:
        return float(_equation(theta, harmonics, phase))

    theta0 = math.fmod((params.beta + 1.0) / 2.0, 1.0)
    if theta0 < 0:
        theta0 += 1.0

    scan = _sign_scan(harmonics, phase)
    width = 0.25
    lo, hi = theta0 - width, theta0 + width
    while f(lo) * f(hi) > 0:
        width += 0.05
        if width > 0.5 + 1e-12:
            raise RootNotBracketedError(
                f"theta equation has no sign change around {theta0:.6f} "
                f"(n={n}, h={params.h:g}, beta={params.beta:g})",
                scan=scan,
            )
        lo, hi = theta0 - width, theta0 + width
    logger.debug(f"solve_theta: n={n}, bracket=[{lo:.6f}, {hi:.6f}]")

    root = brentq(f, lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=200)
    for _ in range(_NEWTON_STEPS):
        slope = _equation_slope(root, harmonics, phase)
        if slope == 0.0:
            break
        candidate = root - f(root) / slope
        if not lo <= candidate <= hi or abs(f(candidate)) >= abs(f(root)):
            break
        root = candidate

    theta = root - math.floor(root)
    if theta >= 1.0 - _WRAP_TOL:
        theta = 0.0

    changes = int(scan["sign_changes"])
    if changes != 1:
        logger.warning(
            f"theta scan found {changes} sign changes on [0, 1) "
            f"(n={n}, h={params.h:g}, beta={params.beta:g}); uniqueness not observed"
        )
    return ThetaSolution(
        theta=theta,
        residual=f(theta),
        bracket=(lo, hi),
        unique=changes == 1,
        sign_changes=changes,
    )


@dataclass(frozen=True)
class _PhaseSums:
    total: float  # sum rho_nu sin_nu / (2nu+1)
    scaled_remainder: float  # (|total| - 1) / q^(2n)


def _phase_sums(
    n: int, params: KernelParams, cfg: SeriesConfig, theta: float
) -> _PhaseSums:
    """
    Normalized width series at theta and its remainder past the leading term.

    With s0 = sin(theta pi - beta pi/2) and c0 = cos(...), the equation gives
    c0 = -sum_{nu>=1} rho_nu c_nu, so

        |S| - 1 = -c0^2/(1 + |s0|) + sign(S) sum_{nu>=1} rho_nu s_nu/(2nu+1),

    every piece of which is O(q^(2n)) and computed without cancellation.
    """
    harmonics = _odd_harmonics(n, params, cfg)
    arg = harmonics.odd * math.pi * theta - params.half_phase
    sines = np.sin(arg)
    total = float(np.dot(harmonics.weights / harmonics.odd, sines))
    sign_total = 1.0 if total >= 0 else -1.0

    two_nh = 2.0 * n * params.h
    q2n = math.exp(-two_nh)
    if sign_total * sines[0] <= 0 or q2n == 1.0:
        return _PhaseSums(total, (abs(total) - 1.0) / q2n)

    nu = np.arange(1, len(harmonics.odd), dtype=np.float64)
    odd = harmonics.odd[1:]
    common = (1.0 + q2n) / (1.0 + np.exp(-odd * two_nh))
    over_q2n = np.exp(-(nu - 1.0) * two_nh) * common  # rho_nu / q^(2n)
    over_qn = np.exp(-(2.0 * nu - 1.0) * n * params.h) * common  # rho_nu / q^n
    c0_over_qn = -float(np.dot(over_qn, np.cos(arg[1:])))
    remainder = -(c0_over_qn**2) / (1.0 + abs(sines[0])) + sign_total * float(
        np.dot(over_q2n / odd, sines[1:])
    )
    return _PhaseSums(total, remainder)


def root_phase_cosine(
    n: int, params: KernelParams, theta: float, cfg: Optional[SeriesConfig] = None
) -> float:
    """
    cos(theta pi - beta pi/2) at a root theta, taken from the equation itself.

    The direct cosine carries an absolute error near machine epsilon while the
    true value is O(q^(2n)); -sum_{nu>=1} rho_nu cos_nu is accurate relative
    to its own size.
    """
    _require_n(n)
    harmonics = _odd_harmonics(n, params, cfg or SeriesConfig())
    arg = harmonics.odd[1:] * math.pi * theta - params.half_phase
    return -float(np.dot(harmonics.weights[1:], np.cos(arg)))


def asymptotic_decompose(
    n: int,
    params: KernelParams,
    cfg: Optional[SeriesConfig] = None,
    theta: Optional[ThetaSolution] = None,
) -> float:
    """
    gamma_n in value = (1/cosh(nh)) (4/pi + gamma_n q^(2n) / (1 - q^(2n))).

    Bounded by 28/(3 pi) once n >= n_h.
    """
    _require_n(n)
    cfg = cfg or SeriesConfig()
    sol = theta or solve_theta(n, params, cfg)
    sums = _phase_sums(n, params, cfg, sol.theta)
    return 4.0 / math.pi * (-math.expm1(-2.0 * n * params.h)) * sums.scaled_remainder


def best_approx_value(
    n: int, params: KernelParams, cfg: Optional[SeriesConfig] = None
) -> WidthReport:
    """
    Exact value of E_n and of the widths d_2n, d_2n-1 when n is past the thresholds.

    The value is always computed; valid_E and valid_width say whether the
    identities are guaranteed at this n.
    """
    _require_n(n)
    cfg = cfg or SeriesConfig()
    sol = solve_theta(n, params, cfg)
    sums = _phase_sums(n, params, cfg, sol.theta)
    value_over_psi = 4.0 / math.pi * abs(sums.total)
    gamma_n = (
        4.0 / math.pi * (-math.expm1(-2.0 * n * params.h)) * sums.scaled_remainder
    )

    star = n_star(params.h)
    width_threshold: Optional[int]
    try:
        width_threshold = n_h(params.h)
    except ThresholdUnreachableError as e:
        logger.warning(f"width threshold unavailable: {e}")
        width_threshold = None
    valid_e = n >= star
    valid_width = width_threshold is not None and n >= width_threshold and valid_e

    if valid_width and abs(gamma_n) > GAMMA_N_BOUND:
        logger.warning(
            f"|gamma_n|={abs(gamma_n):.6g} exceeds {GAMMA_N_BOUND:.6g} at n={n}, h={params.h:g}"
        )

    return WidthReport(
        n=n,
        h=params.h,
        beta=params.beta,
        value=psi(n, params) * value_over_psi,
        value_over_psi=value_over_psi,
        theta=sol,
        n_star=star,
        n_h=width_threshold,
        valid_E=valid_e,
        valid_width=valid_width,
        gamma_n=gamma_n,
    )


def two_sided_bounds(
    n: int, params: KernelParams, cfg: Optional[SeriesConfig] = None
) -> TwoSidedBounds:
    """
    psi(n) (1 -+ (7/3) q^(2n)/(1 - q^(2n))) around sum psi((2nu+1)n)/(2nu+1) sin(...).

    The comparison runs on the scaled remainder, so it stays exact when
    q^(2n) is far below machine epsilon.
    """
    _require_n(n)
    cfg = cfg or SeriesConfig()
    sol = solve_theta(n, params, cfg)
    sums = _phase_sums(n, params, cfg, sol.theta)
    two_nh = 2.0 * n * params.h
    q2n = math.exp(-two_nh)
    allowance = 7.0 / 3.0 / (-math.expm1(-two_nh))
    psi_n = psi(n, params)
    middle = psi_n * abs(sums.total)
    return TwoSidedBounds(
        n=n,
        lower=psi_n * (1.0 - allowance * q2n),
        middle=middle,
        upper=psi_n * (1.0 + allowance * q2n),
        scaled_remainder=sums.scaled_remainder,
        relative_gap=2.0 * allowance * q2n / abs(sums.total),
        holds=abs(sums.scaled_remainder) <= allowance,
    )


def two_sided_check(
    n: int, params: KernelParams, cfg: Optional[SeriesConfig] = None
) -> bool:
    return two_sided_bounds(n, params, cfg).holds


def _signed_odd_series(
    n: int, params: KernelParams, cfg: SeriesConfig, alternate: bool
) -> float:
    harmonics = _odd_harmonics(n, params, cfg)
    signs = (-1.0) ** np.arange(len(harmonics.odd)) if alternate else 1.0
    terms = psi_array(harmonics.odd * n, params.h) / harmonics.odd
    return float(4.0 / math.pi * np.sum(signs * terms))


def even_phase_value(
    n: int, params: KernelParams, cfg: Optional[SeriesConfig] = None
) -> float:
    """(4/pi) sum (-1)^nu / ((2nu+1) cosh((2nu+1)nh)), the value for even beta at every n."""
    _require_n(n)
    if not (params.is_integer_beta and int(params.beta) % 2 == 0):
        raise InvalidInputError(f"even_phase_value needs even beta, got {params.beta}")
    return _signed_odd_series(n, params, cfg or SeriesConfig(), alternate=True)


def odd_phase_value(
    n: int, params: KernelParams, cfg: Optional[SeriesConfig] = None
) -> float:
    """(4/pi) sum 1 / ((2nu+1) cosh((2nu+1)nh)), the value for odd beta."""
    _require_n(n)
    if not (params.is_integer_beta and int(params.beta) % 2 != 0):
        raise InvalidInputError(f"odd_phase_value needs odd beta, got {params.beta}")
    return _signed_odd_series(n, params, cfg or SeriesConfig(), alternate=False)
