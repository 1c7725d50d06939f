"""
Brute-force reference computations.

Nothing here shares code paths with the series, root and spline machinery it
checks: maxima come from dense scans plus scalar refinement, best
approximations from a Remez exchange, convolutions from adaptive quadrature.
Speed is not a concern.

Function handles passed in may be vectorized (array in, array out) or return
a constant; both are broadcast over the sample grid.
"""

import math
from typing import Callable, List, Optional, Tuple

import numpy as np
from loguru import logger
from scipy.integrate import quad
from scipy.optimize import minimize_scalar

from analytic_widths.domain.oracle import GridSearchResult, RemezResult
from analytic_widths.domain.spline import PiecewiseConstant
from analytic_widths.exceptions import InvalidInputError, OracleFailureError, QuadratureError

SCAN_POINTS = 4096
REMEZ_MAX_ITER = 100
REMEZ_TOL = 1e-10
QUAD_TOL = 1e-10

TWO_PI = 2.0 * math.pi


def _sample(f: Callable, t: np.ndarray) -> np.ndarray:
    return np.broadcast_to(np.asarray(f(t), dtype=np.float64), t.shape).copy()


def sup_norm(
    f: Callable, period: float = TWO_PI, points: int = SCAN_POINTS
) -> GridSearchResult:
    """
    max f over one period: dense scan, then golden-section search on the best cell.

    Pass abs(g) to get a sup-norm. A maximum that is not strict on the grid
    (a constant, for instance) is returned as found.
    """
    if not period > 0:
        raise InvalidInputError(f"period must be positive, got {period}")
    step = period / points
    grid = np.arange(points) * step
    values = _sample(f, grid)
    i = int(np.argmax(values))
    best_t, best = float(grid[i]), float(values[i])
    left, right = values[(i - 1) % points], values[(i + 1) % points]
    if not (left < best and right < best):
        return GridSearchResult(argmax=best_t, max_value=best, refinement_width=step)

    # golden's xtol is relative, so refine one period up when the cell touches 0
    centre = best_t if best_t >= step else best_t + period
    xtol = 5e-16
    try:
        res = minimize_scalar(
            lambda t: -float(f(t)),
            bracket=(centre - step, centre, centre + step),
            method="golden",
            options={"xtol": xtol},
        )
    except ValueError as e:
        logger.debug(f"sup_norm: refinement skipped ({e})")
        return GridSearchResult(argmax=best_t, max_value=best, refinement_width=step)
    if -res.fun > best:
        best_t, best = float(res.x) % period, float(-res.fun)
    width = 2.0 * xtol * abs(float(res.x))
    logger.debug(f"sup_norm: argmax={best_t:.15g}, max={best:.17g}, nfev={res.nfev}")
    return GridSearchResult(argmax=best_t, max_value=best, refinement_width=width)


def _basis(t: np.ndarray, order: int) -> np.ndarray:
    k = np.arange(1, order + 1)
    angles = np.outer(t, k)
    return np.hstack([np.ones((len(t), 1)), np.cos(angles), np.sin(angles)])


def _polynomial(coeffs: np.ndarray, order: int) -> Callable[[np.ndarray], np.ndarray]:
    def evaluate(t):
        t_arr = np.atleast_1d(np.asarray(t, dtype=np.float64))
        out = _basis(t_arr, order) @ coeffs
        return float(out[0]) if np.ndim(t) == 0 else out

    return evaluate


def _alternating_extrema(
    grid: np.ndarray, values: np.ndarray, size: int, refine: Optional[Callable] = None
) -> Optional[List[Tuple[float, float]]]:
    """
    One extremum per cyclic sign run, thinned to exactly `size` alternating points.

    Returns None when there are fewer than `size` runs.
    """
    positive = values >= 0
    starts = np.nonzero(positive != np.roll(positive, 1))[0]
    if len(starts) < size:
        return None
    step = grid[1] - grid[0]
    extrema: List[Tuple[float, float]] = []
    for a, b in zip(starts, np.roll(starts, -1)):
        run = np.arange(a, b if b > a else b + len(grid)) % len(grid)
        i = int(run[np.argmax(np.abs(values[run]))])
        t, e = float(grid[i]), float(values[i])
        if refine is not None:
            res = minimize_scalar(
                lambda x: -abs(refine(x)),
                bounds=(t - step, t + step),
                method="bounded",
                options={"xatol": 1e-12},
            )
            if -res.fun > abs(e):
                t, e = float(res.x) % TWO_PI, float(refine(res.x))
        extrema.append((t, e))

    # drop the weakest point, then merge its now-adjacent same-sign neighbours
    while len(extrema) > size:
        weakest = min(range(len(extrema)), key=lambda idx: abs(extrema[idx][1]))
        extrema.pop(weakest)
        count = len(extrema)
        before, after = (weakest - 1) % count, weakest % count
        loser = before if abs(extrema[before][1]) < abs(extrema[after][1]) else after
        extrema.pop(loser)
    return sorted(extrema)


def remez_trig(
    f: Callable,
    order: int,
    max_iter: int = REMEZ_MAX_ITER,
    tol: float = REMEZ_TOL,
) -> RemezResult:
    """
    Best uniform approximation error of a 2pi-periodic f by trigonometric
    polynomials of order <= order.

    Exchange iterations on 2*order+2 alternation points; converged when the
    refined maximum error and the levelled error |E| agree to tol relative.

    Raises:
        OracleFailureError: On a singular reference, lost alternation, or no
            convergence within max_iter exchanges
    """
    if order < 0:
        raise InvalidInputError(f"order must be nonnegative, got {order}")
    size = 2 * order + 2
    dense = np.arange(max(4096, 64 * (order + 1))) * TWO_PI / max(4096, 64 * (order + 1))
    f_dense = _sample(f, dense)
    scale = float(np.max(np.abs(f_dense)))
    if scale == 0.0:
        return RemezResult(order=order, error=0.0, level=0.0, iterations=0, reference=[])

    initial = _alternating_extrema(dense, f_dense - f_dense.mean(), size)
    if initial is None:
        reference = list(np.arange(size) * TWO_PI / size)
    else:
        reference = [t for t, _ in initial]

    signs = np.where(np.arange(size) % 2 == 0, 1.0, -1.0)
    for iteration in range(1, max_iter + 1):
        ref = np.asarray(reference)
        system = np.hstack([_basis(ref, order), signs[:, None]])
        try:
            solution = np.linalg.solve(system, _sample(f, ref))
        except np.linalg.LinAlgError as e:
            raise OracleFailureError(f"singular Remez reference at iteration {iteration}: {e}")
        coeffs, level = solution[:-1], float(solution[-1])
        poly = _polynomial(coeffs, order)

        def residual(t, poly=poly):
            return float(f(t)) - poly(t)

        err_dense = f_dense - poly(dense)
        extrema = _alternating_extrema(dense, err_dense, size, refine=residual)
        if extrema is None:
            raise OracleFailureError(
                f"Remez error curve lost alternation at iteration {iteration} "
                f"(order={order})"
            )
        max_err = max(float(np.max(np.abs(err_dense))), max(abs(e) for _, e in extrema))
        logger.debug(f"remez_trig: iteration={iteration}, |E|={abs(level):.17g}, max={max_err:.17g}")
        if max_err == 0.0 or max_err - abs(level) <= tol * max_err or max_err <= 1e-15 * scale:
            return RemezResult(
                order=order,
                error=max_err,
                level=abs(level),
                iterations=iteration,
                reference=[t for t, _ in extrema],
            )
        reference = [t for t, _ in extrema]

    raise OracleFailureError(f"Remez exchange did not converge in {max_iter} iterations")


def sign_sin_pieces(n: int) -> PiecewiseConstant:
    """sign sin(nt) on [0, 2pi) as a step function."""
    if n < 1:
        raise InvalidInputError(f"n must be at least 1, got {n}")
    return PiecewiseConstant(
        breakpoints=[k * math.pi / n for k in range(2 * n + 1)],
        values=[1.0 if k % 2 == 0 else -1.0 for k in range(2 * n)],
    )


def quadrature_convolution(
    kernel_eval: Callable[[float], float],
    phi: PiecewiseConstant,
    x: float,
    tol: float = QUAD_TOL,
) -> float:
    """
    (1/pi) integral of kernel(x - t) phi(t) dt, one adaptive quadrature per piece.

    Each piece is split where x - t crosses a multiple of 2pi.

    Raises:
        QuadratureError: If a piece's error estimate exceeds tol
    """
    total = 0.0
    for a, b, value in phi.pieces():
        if value == 0.0:
            continue
        base = x - TWO_PI * math.floor((x - a) / TWO_PI)
        cuts = [c for c in (base, base + TWO_PI) if a < c < b]
        integral, abserr = quad(
            lambda t: float(kernel_eval(x - t)),
            a,
            b,
            points=cuts or None,
            epsabs=1e-12,
            epsrel=0.0,
            limit=200,
        )
        if abserr > tol:
            raise QuadratureError(
                f"quadrature on ({a:.6g}, {b:.6g}) has error estimate {abserr:.3g} > {tol:g}"
            )
        total += value * integral
    return total / math.pi
