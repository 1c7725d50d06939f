"""
Certification of the alternating-sign condition behind the width lower bound.

verify_C builds the fundamental spline at the extremal shift y0 = theta_n pi/n
and reads the signs of its (psi,beta)-derivative at the 2n midpoints. The
condition holds when sign v_k = (-1)^k eps for one eps in {-1, +1} and no
midpoint value vanishes. The sufficient inequality

    P_q(t_k - y0) + s * sum(gamma) >= 0,   s = sign sin(n y0 - beta pi/2)

is evaluated alongside as a diagnostic; the verdict rests on the signs.

certify_envelope reaches n where the 2n midpoints no longer fit in memory:
it bounds the signed derivative from below over the whole circle using only
the first harmonics, whose count depends on h alone.
"""

import math
from typing import Dict, Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from analytic_widths.domain.kernel import KernelParams, SeriesConfig
from analytic_widths.domain.reports import (
    EnvelopeCertificate,
    ImplicationReport,
    SignPatternReport,
)
from analytic_widths.exceptions import InvalidInputError
from analytic_widths.extremal import best_approx_value, root_phase_cosine, solve_theta
from analytic_widths.series_core import tail_index
from analytic_widths.sk_spline import (
    derivative_representation,
    extremal_grid,
    normalized_eigenvalues,
)
from analytic_widths.thresholds import (
    N_H_MIN,
    check_relaxed_gamma_condition,
    gamma_condition_holds,
    star_condition_holds,
)

SIGN_FLOOR = 1e-12
ENVELOPE_GRID_MIN = 1 << 12
ENVELOPE_GRID_MAX = 1 << 22
ENVELOPE_SAG_FRACTION = 0.01

DEFAULT_Q_GRID = tuple(round(0.31 + 0.01 * i, 2) for i in range(69))
DEFAULT_N_GRID = tuple(range(9, 201))


def verify_C(
    n: int, params: KernelParams, cfg: Optional[SeriesConfig] = None
) -> SignPatternReport:
    """
    Check the sign pattern of the spline derivative at y0 for (h, beta, n).

    Midpoint values within 1e-12 of zero (in units of pi/(4n psi(n))) count
    as sign 0 and fail certification.
    """
    cfg = cfg or SeriesConfig()
    sol = solve_theta(n, params, cfg)
    grid = extremal_grid(n, sol.theta)
    rep = derivative_representation(
        grid, params, cfg, root_phase_cosine(n, params, sol.theta, cfg)
    )
    values = rep.spsi_v0
    signs = np.where(np.abs(values) <= SIGN_FLOOR, 0, np.sign(values)).astype(int)
    # (-1)^k for k = 1..2n
    parity = -rep.alternation
    pattern = signs * parity.astype(int)

    epsilon: Optional[int] = None
    if pattern[0] != 0 and np.all(pattern == pattern[0]):
        epsilon = int(pattern[0])
    satisfied = epsilon is not None
    if satisfied:
        margin = float(np.min(epsilon * parity * values))
    else:
        margin = max(float(np.min(e * parity * values)) for e in (1, -1))

    s = rep.eigenvalues.s
    slack = rep.p_q + s * rep.gammas.sum(axis=0)
    sufficient_margin = float(np.min(slack))

    bound = best_approx_value(n, params, cfg).value if satisfied else None
    logger.info(
        f"verify_C: h={params.h:g}, beta={params.beta:g}, n={n}, "
        f"satisfied={satisfied}, margin={margin:.6g}"
    )
    return SignPatternReport(
        n=n,
        params=params,
        y0=grid.y,
        signs=[int(v) for v in signs],
        epsilon=epsilon,
        e_flags=[bool(v != 0) for v in signs],
        satisfied=satisfied,
        margin=margin,
        sufficient_ok=bool(s != 0 and sufficient_margin >= 0.0),
        sufficient_margin=sufficient_margin,
        certified_lower_bound=bound,
    )


def _dropped_harmonics_bound(
    n: int, h: float, harmonics: int, abs_sin: float, abs_cos: float
) -> float:
    """
    Bound on sum_{j >= harmonics} |a_j| for the envelope coefficients a_j.

    Uses |mu_j| >= lead_j (|sin| - |cos|) - |r_tail| with lead_j >= 1/2, and
    c_j >= cos(pi/4) for j <= n/2, c_j >= 1/n beyond.
    """
    q2n = math.exp(-2.0 * n * h)
    alias = 2.0 * q2n / -math.expm1(-2.0 * n * h)
    floor = 0.5 * (abs_sin - abs_cos) - alias
    if floor <= 0.0:
        return math.inf
    one_minus_q = -math.expm1(-h)
    c_low = math.sqrt(0.5)

    lead_low = 3.0 * (1.0 + q2n)
    r_low = alias + lead_low * (abs_cos + abs_cos * abs_cos)
    low = math.exp(-harmonics * h) / one_minus_q * (
        2.0 / (floor * c_low) + 4.0 * r_low / (floor * floor * c_low)
    )

    lead_high = (n + 1.0) * (1.0 + q2n)
    r_high = alias + lead_high * (abs_cos + abs_cos * abs_cos)
    scale = math.exp(math.log(n) - (n // 2 + 1) * h) / one_minus_q
    high = scale * (2.0 / floor + 4.0 * r_high / (floor * floor)) if scale else 0.0
    return low + high


def certify_envelope(
    n: int, params: KernelParams, cfg: Optional[SeriesConfig] = None
) -> EnvelopeCertificate:
    """
    Certify the sign pattern at y0 through a lower bound of its envelope.

    With eps = -s the signed midpoint values are samples of

        E(tau) = 1/2 + sum_j lead_j cos(j tau) + s (g1(tau) + g2)

    whose coefficients decay like q^j. The first harmonics are kept exactly;
    the rest enter through a bound. E is sampled by FFT on a uniform grid,
    refined until the curvature allowance is at most 1% of the sampled
    minimum. The margin is the sampled minimum less every allowance. Cost
    depends on h only.

    Raises:
        InvalidInputError: If n is too small for the kept harmonics
    """
    cfg = cfg or SeriesConfig()
    h = params.h
    harmonics = tail_index(h, cfg) + math.ceil(math.log(8.0) / h) + 1
    if n < N_H_MIN or 2 * harmonics >= n:
        raise InvalidInputError(
            f"envelope needs n >= {max(N_H_MIN, 2 * harmonics + 1)} at h={h:g}, got {n}"
        )

    sol = solve_theta(n, params, cfg)
    grid = extremal_grid(n, sol.theta)
    cos_omega = root_phase_cosine(n, params, sol.theta, cfg)
    eig = normalized_eigenvalues(grid, params, cfg, cos_omega, count=harmonics)
    s = eig.s
    if s == 0:
        logger.warning(f"certify_envelope: s = 0 at h={h:g}, n={n}")
        return EnvelopeCertificate(
            n=n,
            params=params,
            y0=grid.y,
            harmonics=harmonics,
            grid_points=0,
            grid_min=0.0,
            curvature_bound=0.0,
            tail_bound=0.0,
            roundoff_bound=0.0,
            margin=0.0,
            satisfied=False,
        )

    j = np.arange(harmonics)
    modulus = np.abs(eig.mu)
    half_angle = np.cos(j * math.pi / (2 * n))
    q_pow = np.exp(-j * h)
    w = np.empty(harmonics)
    w[0] = 1.0 / modulus[0] ** 2
    w[1:] = 2.0 * q_pow[1:] / (modulus[1:] ** 2 * half_angle[1:])
    coeffs = s * w * (eig.r - eig.big_r * s)
    coeffs[1:] += 2.0 * q_pow[1:] / (modulus[1:] * half_angle[1:])
    big_r0 = float(eig.big_r[0])
    coeffs[0] = 0.5 + coeffs[0].real - big_r0 / (2.0 * (2.0 + big_r0))

    abs_coeffs = np.abs(coeffs)
    curvature = float(np.sum(j.astype(np.float64) ** 2 * abs_coeffs))
    points = ENVELOPE_GRID_MIN
    while True:
        padded = np.zeros(points, dtype=np.complex128)
        padded[:harmonics] = coeffs
        grid_min = float((points * np.fft.ifft(padded)).real.min())
        sag = curvature * (2.0 * math.pi / points) ** 2 / 8.0
        if sag <= ENVELOPE_SAG_FRACTION * abs(grid_min) or points >= ENVELOPE_GRID_MAX:
            break
        points *= 2

    abs_sin = math.sqrt(max(0.0, 1.0 - cos_omega * cos_omega))
    tail = _dropped_harmonics_bound(n, h, harmonics, abs_sin, abs(cos_omega))
    roundoff = 4.0 * np.finfo(float).eps * (math.log2(points) + 1.0) * float(abs_coeffs.sum())
    margin = grid_min - sag - tail - roundoff
    satisfied = margin > 0.0
    logger.info(
        f"certify_envelope: h={h:g}, beta={params.beta:g}, n={n}, "
        f"points={points}, margin={margin:.6g}"
    )
    return EnvelopeCertificate(
        n=n,
        params=params,
        y0=grid.y,
        epsilon=-s,
        harmonics=harmonics,
        grid_points=points,
        grid_min=grid_min,
        curvature_bound=sag,
        tail_bound=tail,
        roundoff_bound=roundoff,
        margin=margin,
        satisfied=satisfied,
    )


def _consequents(q: float, n: np.ndarray) -> Dict[str, np.ndarray]:
    n_f = n.astype(np.float64)
    one_minus_q = 1.0 - q
    return {
        "relaxed": check_relaxed_gamma_condition(n, q),
        "cubic_bound": n_f > 160.0 * q * (1.0 + q) ** 3 / (57.0 * one_minus_q**5),
        "quintic_bound": n_f > 8.0 * q * (1.0 + q) / (3.0 * one_minus_q**5),
        "log_bound": n_f > 5.0 / (1.0 - q * q) * math.log(2.0 / one_minus_q),
        "star_condition": star_condition_holds(n, -math.log(q)),
    }


def implication_report(
    q_grid: Sequence[float] = DEFAULT_Q_GRID, n_grid: Sequence[int] = DEFAULT_N_GRID
) -> ImplicationReport:
    """
    Evaluate the chain of consequences of the n_h inequality on a (q, n) grid.

    At every point where the n_h inequality holds, each link of
    relaxed -> cubic_bound -> quintic_bound -> log_bound -> star_condition
    is checked; a failing link is counted as a violation.
    """
    if len(q_grid) == 0 or len(n_grid) == 0:
        raise InvalidInputError("implication grids must be nonempty")
    n = np.asarray(n_grid, dtype=np.int64)
    if np.any(n < 9):
        raise InvalidInputError("implication n grid must start at 9 or later")

    violations: Dict[str, int] = {}
    first: Optional[Tuple[float, int, str]] = None
    antecedent_points = 0
    for q in q_grid:
        if not 0.0 < q < 1.0:
            raise InvalidInputError(f"q must lie in (0, 1), got {q}")
        antecedent = gamma_condition_holds(n, q)
        antecedent_points += int(np.count_nonzero(antecedent))
        for link, holds in _consequents(q, n).items():
            failing = antecedent & ~holds
            violations[link] = violations.get(link, 0) + int(np.count_nonzero(failing))
            if first is None and failing.any():
                first = (float(q), int(n[int(np.argmax(failing))]), link)

    if first is not None:
        logger.warning(f"implication chain broken at q={first[0]}, n={first[1]}: {first[2]}")
    return ImplicationReport(
        points=len(q_grid) * len(n_grid),
        antecedent_points=antecedent_points,
        violations=violations,
        first_violation=first,
    )


def implication_chain(
    q_grid: Sequence[float] = DEFAULT_Q_GRID, n_grid: Sequence[int] = DEFAULT_N_GRID
) -> bool:
    return implication_report(q_grid, n_grid).holds
