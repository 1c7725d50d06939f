"""
Kernel series for classes of functions analytic in the strip |Im z| < h.

Every series here is built on the coefficient sequence psi(k) = 1/cosh(kh),
always evaluated as 2 q^k / (1 + q^(2k)) with q = exp(-h) so nothing overflows
for large kh. Truncation uses the geometric tail bound

    sum_{k > K} psi(k) <= 2 q^(K+1) / (1 - q) < abs_tol,

which also bounds the tails of psi(k)/k and 2/(q^j + q^-j).

Key functions:
- psi(), psi_array(): the coefficient sequence
- eval_H(): the kernel H(t) = sum psi(k) cos(kt - beta*pi/2)
- eval_Psi_beta1(): its Bernoulli integral sum psi(k)/k cos(kt - (beta+1)pi/2)
- eval_P_q(): 1/2 + 2 sum cos(jt)/(q^j + q^-j), or its Poisson dual for small h
- epsilon_n(): sup_{k >= n} |psi(k+1)/psi(k) - q|
"""

import math
from typing import Optional, Union

import numpy as np
from loguru import logger

from analytic_widths.domain.kernel import KernelParams, SeriesConfig
from analytic_widths.exceptions import InvalidInputError, SeriesTruncationError

ArrayLike = Union[float, np.ndarray]

# largest outer-product block (rows * terms) built at once
_BLOCK_ELEMENTS = 1 << 21


def psi(k: int, params: KernelParams) -> float:
    """
    Return 1/cosh(kh) without overflow.

    Args:
        k: Coefficient index, k >= 1
        params: Kernel parameters

    Returns:
        2 exp(-kh) / (1 + exp(-2kh)); underflows gracefully to 0 for huge kh
    """
    if k < 1:
        raise InvalidInputError(f"psi is defined for k >= 1, got k={k}")
    e = math.exp(-k * params.h)
    return 2.0 * e / (1.0 + e * e)


def psi_array(k: np.ndarray, h: float) -> np.ndarray:
    """Vectorized 1/cosh(kh) for an array of (possibly non-integer) k >= 0."""
    e = np.exp(-np.asarray(k, dtype=np.float64) * h)
    return 2.0 * e / (1.0 + e * e)


def psi_ratio(k: int, params: KernelParams) -> float:
    """psi(k+1)/psi(k) = q (1 + q^(2k)) / (1 + q^(2k+2))."""
    h = params.h
    return math.exp(-h) * (1.0 + math.exp(-2 * k * h)) / (1.0 + math.exp(-2 * (k + 1) * h))


def tail_index(h: float, cfg: SeriesConfig) -> int:
    """
    Smallest K with 2 exp(-(K+1)h) / (1 - exp(-h)) < abs_tol.

    Raises:
        SeriesTruncationError: If K would exceed cfg.max_terms
    """
    one_minus_q = -math.expm1(-h)
    log_ratio = math.log(2.0 / (one_minus_q * cfg.abs_tol))
    k_tail = max(1, int(math.floor(log_ratio / h)))
    if k_tail > cfg.max_terms:
        raise SeriesTruncationError(
            f"tail bound {cfg.abs_tol:g} needs {k_tail} terms at h={h:g}, "
            f"more than max_terms={cfg.max_terms}"
        )
    return k_tail


def truncation_index(params: KernelParams, cfg: Optional[SeriesConfig] = None) -> int:
    """Truncation index K for the kernel series of this class."""
    return tail_index(params.h, cfg or SeriesConfig())


def cosine_series(
    t: ArrayLike, coeffs: np.ndarray, freqs: np.ndarray, phase: float
) -> ArrayLike:
    """
    Evaluate sum_k coeffs[k] * cos(freqs[k] * t - phase).

    Accepts a scalar or an array of t and returns the same shape. Large grids
    are processed in blocks so the cosine matrix stays bounded in memory.
    """
    t_arr = np.atleast_1d(np.asarray(t, dtype=np.float64))
    flat = t_arr.ravel()
    out = np.empty_like(flat)
    rows = max(1, _BLOCK_ELEMENTS // max(1, len(freqs)))
    for start in range(0, len(flat), rows):
        block = flat[start : start + rows]
        out[start : start + rows] = np.cos(np.outer(block, freqs) - phase) @ coeffs
    if np.ndim(t) == 0:
        return float(out[0])
    return out.reshape(t_arr.shape)


def eval_H(
    t: ArrayLike, params: KernelParams, cfg: Optional[SeriesConfig] = None
) -> ArrayLike:
    """Kernel H(t) = sum_{k>=1} psi(k) cos(kt - beta*pi/2)."""
    cfg = cfg or SeriesConfig()
    k_tail = truncation_index(params, cfg)
    k = np.arange(1, k_tail + 1, dtype=np.float64)
    logger.debug(f"eval_H: h={params.h:g}, beta={params.beta:g}, K={k_tail}")
    return cosine_series(t, psi_array(k, params.h), k, params.half_phase)


def eval_Psi_beta1(
    t: ArrayLike, params: KernelParams, cfg: Optional[SeriesConfig] = None
) -> ArrayLike:
    """Bernoulli integral of the kernel: sum psi(k)/k cos(kt - (beta+1)pi/2)."""
    cfg = cfg or SeriesConfig()
    k_tail = truncation_index(params, cfg)
    k = np.arange(1, k_tail + 1, dtype=np.float64)
    phase = math.fmod(params.beta + 1.0, 4.0) * math.pi / 2.0
    return cosine_series(t, psi_array(k, params.h) / k, k, phase)


def _dual_shift_count(h: float, cfg: SeriesConfig) -> int:
    """
    Smallest M whose dual tail (2pi/h) exp(-pi^2 (2M+1)/(2h)) / (1 - exp(-pi^2/h))
    stays below abs_tol, for t reduced to [-pi, pi).
    """
    decay = math.pi**2 / h
    log_ratio = math.log(2.0 * math.pi / (h * -math.expm1(-decay) * cfg.abs_tol))
    return max(1, math.ceil((log_ratio / decay * 2.0 - 1.0) / 2.0))


def _sech(x: np.ndarray) -> np.ndarray:
    e = np.exp(-np.abs(x))
    return 2.0 * e / (1.0 + e * e)


def eval_P_q(t: ArrayLike, q: float, cfg: Optional[SeriesConfig] = None) -> ArrayLike:
    """
    Evaluate P_q(t) = 1/2 + 2 sum_{j>=1} cos(jt) / (q^j + q^-j).

    For h = -ln q below pi the dual form

        P_q(t) = (pi/(2h)) sum_m sech(pi (t + 2 pi m) / (2h))

    is used: it needs fewer terms there and, all terms being positive, keeps
    its relative accuracy where P_q is tiny (t near pi, q near 1).

    Args:
        t: Point or array of points
        q: Ratio in (0, 1)
        cfg: Series truncation policy

    Returns:
        P_q(t) with the discarded tail below cfg.abs_tol
    """
    if not 0.0 < q < 1.0:
        raise InvalidInputError(f"q must lie in (0, 1), got {q}")
    cfg = cfg or SeriesConfig()
    h = -math.log(q)
    if h >= math.pi:
        k_tail = tail_index(h, cfg)
        j = np.arange(1, k_tail + 1, dtype=np.float64)
        # 2/(q^j + q^-j) is exactly 1/cosh(jh)
        return 0.5 + cosine_series(t, psi_array(j, h), j, 0.0)

    shifts = _dual_shift_count(h, cfg)
    m = np.arange(-shifts, shifts + 1, dtype=np.float64)
    t_arr = np.asarray(t, dtype=np.float64)
    reduced = np.mod(t_arr + math.pi, 2.0 * math.pi) - math.pi
    args = math.pi / (2.0 * h) * (reduced[..., None] + 2.0 * math.pi * m)
    values = math.pi / (2.0 * h) * _sech(args).sum(axis=-1)
    if np.ndim(t) == 0:
        return float(values)
    return values


def epsilon_n(n: int, params: KernelParams) -> float:
    """
    sup_{k>=n} |psi(k+1)/psi(k) - q| for psi(k) = 1/cosh(kh).

    The ratio q(1 + q^(2k))/(1 + q^(2k+2)) decreases to q, so the supremum
    sits at k = n and equals q^(2n+1)(1 - q^2)/(1 + q^(2n+2)).
    """
    if n < 1:
        raise InvalidInputError(f"epsilon_n needs n >= 1, got n={n}")
    h = params.h
    return (
        math.exp(-(2 * n + 1) * h)
        * (-math.expm1(-2 * h))
        / (1.0 + math.exp(-(2 * n + 2) * h))
    )
