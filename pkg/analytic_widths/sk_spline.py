"""
Fundamental SK-splines on the uniform 2n-point partition and their derivatives.

The spline alpha_0 + sum_k alpha_k Psi_{beta,1}(x - x_k) interpolates the
Kronecker delta at the shifted nodes y_k = x_k + y. On uniform nodes the
interpolation matrix is circulant with eigenvalues n lambda_l(y), where

    lambda_l(y) = sum_{k = l mod 2n} c_k exp(iky),  c_k = psi(|k|)/|k| exp(-+i(beta+1)pi/2).

Near the top frequency everything is carried in the scaled form
mu_j = (n/psi(n)) q^j lambda_{n-j}(y), and the (psi,beta)-derivative in units
of pi/(4n psi(n)); both stay O(1) however small psi(n) gets.

Key functions:
- lambda_direct(), lambda_closed(): the eigenvalues, two independent ways
- build_fundamental_spline(): FFT inversion of the circulant system
- normalized_eigenvalues(): mu_j with its leading-term decomposition
- derivative_midpoint_values(): the derivative at the 2n midpoints, any form
- gamma_breakdown(): the correction terms and their bound at y0
"""

import math
from dataclasses import dataclass
from typing import Dict, Literal, Optional

import numpy as np
from loguru import logger

from analytic_widths.domain.kernel import KernelParams, SeriesConfig
from analytic_widths.domain.spline import (
    GammaBreakdown,
    NodeGrid,
    NormalizedEigenvalues,
    PiecewiseConstant,
    SplineSystem,
)
from analytic_widths.exceptions import (
    ConditioningError,
    InvalidInputError,
    NumericalError,
    SeriesTruncationError,
)
from analytic_widths.extremal import root_phase_cosine
from analytic_widths.series_core import eval_P_q, eval_Psi_beta1, psi, psi_array, tail_index
from analytic_widths.thresholds import check_umova_z
from analytic_widths.utils.fourier import midpoint_sums

EIGENVALUE_FLOOR = 1e-13

DerivativeForm = Literal["spsi_v0", "sp_psi", "sp_phi", "coefficients"]

# a grid shift counts as the extremal point when the direct phase cosine is this close
_ROOT_MATCH = 1e-10


def _bernoulli_phase(params: KernelParams) -> float:
    return math.fmod(params.beta + 1.0, 4.0) * math.pi / 2.0


def lambda_direct(
    l: int, grid: NodeGrid, params: KernelParams, cfg: Optional[SeriesConfig] = None
) -> complex:
    """(1/n) sum_{nu=1}^{2n} exp(i l nu pi/n) Psi_{beta,1}(y - nu pi/n)."""
    n = grid.n
    nu = np.arange(1, 2 * n + 1, dtype=np.float64)
    values = eval_Psi_beta1(grid.y - nu * grid.step, params, cfg)
    return complex(np.sum(np.exp(1j * l * nu * grid.step) * values) / n)


def direct_sum_scale(
    grid: NodeGrid, params: KernelParams, cfg: Optional[SeriesConfig] = None
) -> float:
    """(1/n) sum |Psi_{beta,1}(y - nu pi/n)|, the rounding scale of lambda_direct."""
    nu = np.arange(1, 2 * grid.n + 1, dtype=np.float64)
    values = eval_Psi_beta1(grid.y - nu * grid.step, params, cfg)
    return float(np.sum(np.abs(values)) / grid.n)


def lambda_closed(
    l: int, grid: NodeGrid, params: KernelParams, cfg: Optional[SeriesConfig] = None
) -> complex:
    """
    Aliased-frequency series for lambda_l(y), l = 1..2n.

    Sums c_k exp(iky) over k = l + 2mn, dropping |k| beyond the kernel
    tail index (never dropping the two leading aliases).
    """
    n = grid.n
    if not 1 <= l <= 2 * n:
        raise InvalidInputError(f"l must lie in 1..{2 * n}, got l={l}")
    cfg = cfg or SeriesConfig()
    upper = max(tail_index(params.h, cfg), 2 * n)
    phase = _bernoulli_phase(params)
    positive = np.arange(l, upper + 1, 2 * n, dtype=np.float64)
    negative = np.arange(2 * n - l, upper + 1, 2 * n, dtype=np.float64)
    negative = negative[negative > 0]
    total = np.sum(
        psi_array(positive, params.h) / positive * np.exp(1j * (positive * grid.y - phase))
    ) + np.sum(
        psi_array(negative, params.h) / negative * np.exp(-1j * (negative * grid.y - phase))
    )
    return complex(total)


def build_fundamental_spline(
    grid: NodeGrid, params: KernelParams, cfg: Optional[SeriesConfig] = None
) -> SplineSystem:
    """
    Solve for the fundamental SK-spline by diagonalizing the circulant system.

    The l-th Fourier mode of the coefficients is 1/(2n^2 lambda_l); the zero
    mode vanishes (sum alpha_k = 0) and the constant alpha_0 = 1/(2n) carries
    the mean of the delta data.

    Raises:
        ConditioningError: If |lambda_l(y)| <= 1e-13 for some l = 1..2n-1
    """
    n = grid.n
    lambdas = np.array(
        [lambda_closed(l, grid, params, cfg) for l in range(1, 2 * n + 1)],
        dtype=np.complex128,
    )
    moduli = np.abs(lambdas[:-1])
    for l, modulus in enumerate(moduli, start=1):
        if modulus <= EIGENVALUE_FLOOR:
            raise ConditioningError(
                f"lambda_{l}(y) has modulus {modulus:.3g}; the interpolation "
                f"system is numerically singular (n={n}, y={grid.y:g})",
                l=l,
                modulus=float(modulus),
            )
    logger.debug(f"build_fundamental_spline: n={n}, min |lambda|={moduli.min():.3g}")

    inverse = np.zeros(2 * n, dtype=np.complex128)
    inverse[1:] = 1.0 / lambdas[:-1]
    modes = np.fft.ifft(inverse).real / n
    alpha = np.empty(2 * n + 1)
    alpha[0] = 1.0 / (2 * n)
    alpha[1 : 2 * n] = modes[1:]
    alpha[2 * n] = modes[0]
    return SplineSystem(grid=grid, params=params, lambdas=lambdas, alpha=alpha)


def derivative_from_coefficients(system: SplineSystem) -> np.ndarray:
    """
    Midpoint values of sum_k alpha_k B_1(t - x_k), B_1(s) = (pi - s mod 2pi)/2.

    With sum alpha_k = 0 the linear parts cancel, leaving a step function.
    """
    grid = system.grid
    shifts = np.mod(grid.midpoints[:, None] - grid.nodes[None, 1:], 2.0 * math.pi)
    return ((math.pi - shifts) / 2.0) @ system.alpha[1:]


def derivative_pieces(system: SplineSystem) -> PiecewiseConstant:
    """The derivative as a step function on [0, 2pi)."""
    return PiecewiseConstant(
        breakpoints=[float(x) for x in system.grid.nodes],
        values=[float(v) for v in derivative_from_coefficients(system)],
    )


def _alias_count(n: int, h: float, cfg: SeriesConfig) -> int:
    two_nh = 2.0 * n * h
    log_ratio = math.log(2.0 / ((-math.expm1(-two_nh)) * cfg.abs_tol))
    count = max(1, int(math.floor(log_ratio / two_nh)))
    if count > cfg.max_terms:
        raise SeriesTruncationError(
            f"aliased eigenvalue series needs {count} terms, more than "
            f"max_terms={cfg.max_terms}"
        )
    return count


def normalized_eigenvalues(
    grid: NodeGrid,
    params: KernelParams,
    cfg: Optional[SeriesConfig] = None,
    phase_cosine: Optional[float] = None,
    count: Optional[int] = None,
) -> NormalizedEigenvalues:
    """
    mu_j = (n/psi(n)) q^j lambda_{n-j}(y) for j = 0..n-1, with its decomposition.

    count limits the result to j = 0..count-1.

    mu_j exp(ijy) = lead_j s + r_j, where lead_j is the scaled
    psi(n-j)/(n-j) + psi(n+j)/(n+j) and r_j splits into the aliased tail,
    the i(b - a)cos(ny - beta pi/2) part and the (|sin| - 1)s part.
    phase_cosine overrides cos(ny - beta pi/2) when the caller knows it more
    accurately than the direct evaluation.

    Raises:
        ConditioningError: If some |mu_j| <= 1e-13
    """
    cfg = cfg or SeriesConfig()
    n, y, h = grid.n, grid.y, params.h
    two_nh = 2.0 * n * h
    common = 1.0 + math.exp(-two_nh)
    j = np.arange(n if count is None else min(count, n), dtype=np.float64)

    omega = n * y - params.half_phase
    sin_omega = math.sin(omega)
    cos_omega = math.cos(omega) if phase_cosine is None else phase_cosine
    s = 1 if sin_omega > 0 else (-1 if sin_omega < 0 else 0)

    a_lead = n * common / ((n - j) * (1.0 + np.exp(-2.0 * (n - j) * h)))
    b_lead = n * np.exp(-2.0 * j * h) * common / ((n + j) * (1.0 + np.exp(-2.0 * (n + j) * h)))
    lead = a_lead + b_lead

    m = np.arange(1, _alias_count(n, h, cfg) + 1, dtype=np.float64)
    odd_n = (2.0 * m + 1.0) * n
    k_pos = odd_n[None, :] - j[:, None]
    k_neg = odd_n[None, :] + j[:, None]
    w_pos = n * np.exp(-m * two_nh)[None, :] * common / ((1.0 + np.exp(-2.0 * k_pos * h)) * k_pos)
    w_neg = (
        n
        * np.exp(-(m[None, :] * two_nh + 2.0 * j[:, None] * h))
        * common
        / ((1.0 + np.exp(-2.0 * k_neg * h)) * k_neg)
    )
    tail_arg = odd_n * y - _bernoulli_phase(params)
    r_tail = (w_pos * np.exp(1j * tail_arg)[None, :]).sum(axis=1) + (
        w_neg * np.exp(-1j * tail_arg)[None, :]
    ).sum(axis=1)

    r_phase = 1j * (b_lead - a_lead) * cos_omega
    # |sin| - 1 = -cos^2 / (1 + |sin|)
    abs_sin = math.sqrt(max(0.0, 1.0 - cos_omega * cos_omega))
    r_shape = -lead * cos_omega * cos_omega / (1.0 + abs_sin) * s * np.ones(len(j))
    r = r_tail + r_phase + r_shape

    if s:
        core = lead * s + r
    else:
        core = lead * abs_sin + r_tail + r_phase
    mu = np.exp(-1j * j * y) * core
    modulus = np.abs(mu)
    worst = int(np.argmin(modulus))
    if modulus[worst] <= EIGENVALUE_FLOOR:
        raise ConditioningError(
            f"scaled lambda_{n - worst}(y) has modulus {modulus[worst]:.3g} "
            f"(n={n}, y={y:g})",
            l=n - worst,
            modulus=float(modulus[worst]),
        )

    if s:
        # |lead s + r|^2 - lead^2 = 2 lead s Re r + |r|^2, without cancellation
        big_r = (2.0 * lead * s * r.real + np.abs(r) ** 2) / (modulus + lead)
    else:
        big_r = modulus - lead

    return NormalizedEigenvalues(
        n=n,
        y=y,
        s=s,
        mu=mu,
        lead=lead,
        r_tail=r_tail,
        r_phase=r_phase,
        r_shape=r_shape.astype(np.complex128),
        big_r=big_r,
    )


def extremal_grid(n: int, theta: float) -> NodeGrid:
    """Grid shifted to y0 = theta pi/n, kept strictly below pi/n."""
    step = math.pi / n
    y0 = theta * step
    if y0 >= step:
        y0 = math.nextafter(step, 0.0)
    return NodeGrid(n=n, y=y0)


def derivative_unit(n: int, params: KernelParams) -> float:
    """pi/(4n psi(n)), the unit of the normalized derivative (inf if psi(n) underflows)."""
    psi_n = psi(n, params)
    return math.inf if psi_n == 0.0 else math.pi / (4.0 * n * psi_n)


@dataclass(frozen=True)
class DerivativeRepresentation:
    """Normalized derivative at the 2n midpoints in every algebraic form."""

    eigenvalues: NormalizedEigenvalues
    tau: np.ndarray  # t_k - y
    alternation: np.ndarray  # (-1)^(k+1)
    spsi_v0: np.ndarray
    sp_psi: np.ndarray
    sp_phi: np.ndarray
    p_q: np.ndarray
    gammas: np.ndarray  # (5, 2n)
    split: int  # [sqrt n], capped at n - 1
    delta: np.ndarray  # delta_1..delta_split


def derivative_representation(
    grid: NodeGrid,
    params: KernelParams,
    cfg: Optional[SeriesConfig] = None,
    phase_cosine: Optional[float] = None,
) -> DerivativeRepresentation:
    """
    Evaluate the derivative at all midpoints three ways.

    spsi_v0: sums over Re/Im of the eigenvalues l = 1..n
    sp_psi: (-1)^(k+1) [(1/2 + 2 sum q^j cos(j tau)/(|mu_j| c_j)) s + g1 + g2]
    sp_phi: (-1)^(k+1) [P_q(tau) s + g1 + g2 + g3 + g4 + g5]

    with c_j = cos(j pi/(2n)). Every trigonometric sum over the midpoints is
    one FFT.
    """
    cfg = cfg or SeriesConfig()
    eig = normalized_eigenvalues(grid, params, cfg, phase_cosine)
    n, y, h = grid.n, grid.y, params.h
    q = params.q
    s = eig.s
    k = np.arange(1, 2 * n + 1)
    alternation = np.where(k % 2 == 1, 1.0, -1.0)
    tau = grid.midpoints - y

    j = np.arange(n)
    modulus = np.abs(eig.mu)
    half_angle = np.cos(j * math.pi / (2 * n))
    q_pow = np.exp(-j * h)

    # l = n - j for l = 1..n-1
    l = n - j[1:]
    weights = 2.0 * q_pow[1:] / (modulus[1:] ** 2 * np.sin(l * math.pi / (2 * n)))
    spsi_v0 = (
        midpoint_sums(np.conj(eig.mu[1:]) * weights, l, n).imag
        + alternation * eig.mu[0].real / modulus[0] ** 2
    )

    w = np.empty(n)
    w[0] = 1.0 / modulus[0] ** 2
    w[1:] = 2.0 * q_pow[1:] / (modulus[1:] ** 2 * half_angle[1:])
    gamma_1 = midpoint_sums(w * (eig.r - eig.big_r * s), j, n, y).real
    gamma_2 = np.full(2 * n, -eig.big_r[0] * s / (2.0 * (2.0 + eig.big_r[0])))

    leading = 2.0 * q_pow[1:] / (modulus[1:] * half_angle[1:])
    base = 0.5 + midpoint_sums(leading, j[1:], n, y).real
    sp_psi = alternation * (base * s + gamma_1 + gamma_2)

    split = min(math.isqrt(n), n - 1)
    head = slice(1, split + 1)
    rest = slice(split + 1, n)
    delta = modulus[head] * half_angle[head] / (1.0 + q_pow[head] ** 2) - 1.0
    gamma_3 = s * midpoint_sums(leading[split:], j[rest], n, y).real
    gamma_4 = -s * midpoint_sums(delta * leading[: split], j[head], n, y).real
    upper = max(tail_index(h, cfg), split)
    far = np.arange(split + 1, upper + 1)
    gamma_5 = -s * midpoint_sums(psi_array(far, h), far, n, y).real
    gammas = np.vstack([gamma_1, gamma_2, gamma_3, gamma_4, gamma_5])

    p_q = np.asarray(eval_P_q(tau, q, cfg))
    sp_phi = alternation * (p_q * s + gammas.sum(axis=0))
    logger.debug(f"derivative_representation: n={n}, y={y:.6g}, split={split}")

    return DerivativeRepresentation(
        eigenvalues=eig,
        tau=tau,
        alternation=alternation,
        spsi_v0=spsi_v0,
        sp_psi=sp_psi,
        sp_phi=sp_phi,
        p_q=p_q,
        gammas=gammas,
        split=split,
        delta=delta,
    )


def derivative_midpoint_values(
    grid: NodeGrid,
    params: KernelParams,
    cfg: Optional[SeriesConfig] = None,
    form: DerivativeForm = "spsi_v0",
) -> np.ndarray:
    """
    Normalized derivative at t_1..t_2n, in units of pi/(4n psi(n)).

    "coefficients" goes through the spline coefficients and therefore needs
    the unscaled eigenvalues to clear the conditioning floor.
    """
    if form == "coefficients":
        unit = derivative_unit(grid.n, params)
        if not math.isfinite(unit):
            raise NumericalError(f"psi({grid.n}) underflows; no coefficient form")
        system = build_fundamental_spline(grid, params, cfg)
        return derivative_from_coefficients(system) / unit
    rep = derivative_representation(grid, params, cfg)
    if form == "spsi_v0":
        return rep.spsi_v0
    if form == "sp_psi":
        return rep.sp_psi
    if form == "sp_phi":
        return rep.sp_phi
    raise InvalidInputError(f"unknown derivative form '{form}'")


def eval_derivative_repr(
    t: float, grid: NodeGrid, params: KernelParams, cfg: Optional[SeriesConfig] = None
) -> float:
    """
    The piecewise-constant (psi,beta)-derivative of the fundamental spline at t.

    Raises:
        DomainError: If t lies on a node
        NumericalError: If the value is beyond binary64 range
    """
    k = grid.interval_index(t)
    unit = derivative_unit(grid.n, params)
    value = float(derivative_representation(grid, params, cfg).spsi_v0[k - 1]) * unit
    if not math.isfinite(value):
        raise NumericalError(
            f"derivative at t={t} overflows binary64 (n={grid.n}, h={params.h:g}); "
            f"use derivative_midpoint_values for the normalized value"
        )
    return value


def lemma3_bound(n: int, q: float) -> float:
    """37 q^sqrt(n)/(5(1-q)) + q/(1-q)^2 min{160/(27(n - sqrt n)), 8/(3n - 7 sqrt n)}."""
    root = math.sqrt(n)
    tail = 160.0 / (27.0 * (n - root)) if n > 1 else math.inf
    if 3.0 * n - 7.0 * root > 0:
        tail = min(tail, 8.0 / (3.0 * n - 7.0 * root))
    return 37.0 * q**root / (5.0 * (1.0 - q)) + q / (1.0 - q) ** 2 * tail


def _extremal_cosine(
    grid: NodeGrid, params: KernelParams, cfg: SeriesConfig
) -> Optional[float]:
    """cos(ny - beta pi/2) from the phase equation when y is its root, else None."""
    theta = grid.n * grid.y / math.pi
    eliminated = root_phase_cosine(grid.n, params, theta, cfg)
    direct = math.cos(grid.n * grid.y - params.half_phase)
    if abs(direct - eliminated) > _ROOT_MATCH:
        logger.debug(f"y={grid.y:.6g} is not the extremal point; using the direct cosine")
        return None
    return eliminated


def _internal_bounds(rep: DerivativeRepresentation, params: KernelParams) -> Dict[str, bool]:
    eig = rep.eigenvalues
    n = eig.n
    h = params.h
    j = np.arange(n, dtype=np.float64)
    q2n = math.exp(-2.0 * n * h)
    common = 1.0 + q2n
    one_minus = -math.expm1(-2.0 * n * h)
    abs_r = np.abs(eig.r)
    # sup over tau of |Re((r - R s) exp(i j tau))|
    z_sup = np.abs(eig.r - eig.big_r * eig.s)
    slack = 1.0 + 1e-9

    r_bound = 38.0 / 9.0 * n * np.exp(-(j[1:] + n) * h) * common / 2.0 / one_minus
    r0_bound = 16.0 / 3.0 * q2n * common / (2.0 * one_minus)
    mu_floor = 0.9 * n / (n - j) * common / 2.0
    head = np.arange(1, rep.split + 1, dtype=np.float64)
    delta_bound = 4.0 * head / (3.0 * (n - head))
    return {
        "r_j": bool(np.all(abs_r[1:] <= r_bound * slack)),
        "r_0": bool(abs_r[0] <= r0_bound * slack),
        "mu_floor": bool(np.all(np.abs(eig.mu) > mu_floor)),
        "R_le_r": bool(np.all(np.abs(eig.big_r) <= abs_r * slack + 1e-300)),
        "z_le_2r": bool(np.all(z_sup <= 2.0 * abs_r * slack + 1e-300)),
        "delta_j": bool(np.all(np.abs(rep.delta) <= delta_bound)),
    }


def gamma_breakdown(
    grid: NodeGrid, params: KernelParams, cfg: Optional[SeriesConfig] = None
) -> GammaBreakdown:
    """
    Correction terms g1..g5 at the extremal shift y0 and the bound they obey.

    The reported gamma values are those at the midpoint where sum |g| is
    largest; the full (5, 2n) table is kept alongside.
    """
    cfg = cfg or SeriesConfig()
    rep = derivative_representation(grid, params, cfg, _extremal_cosine(grid, params, cfg))
    totals = np.abs(rep.gammas).sum(axis=0)
    worst = int(np.argmax(totals))
    gamma = [float(g) for g in rep.gammas[:, worst]]
    n = grid.n
    return GammaBreakdown(
        n=n,
        gamma=gamma,
        gamma_by_midpoint=rep.gammas,
        worst_midpoint=worst + 1,
        sum_abs=float(sum(abs(g) for g in gamma)),
        lemma3_bound=lemma3_bound(n, params.q),
        umova_z_ok=check_umova_z(n, params.q),
        n_ok=n >= 9,
        internal_bounds=_internal_bounds(rep, params),
    )
