import itertools
import math
from typing import Any, Dict, Optional

from loguru import logger

from analytic_widths.domain.kernel import KernelParams, SeriesConfig
from analytic_widths.domain.spline import NodeGrid
from analytic_widths.extremal import solve_theta
from analytic_widths.kushpel import verify_C
from analytic_widths.sk_spline import (
    build_fundamental_spline,
    derivative_from_coefficients,
    derivative_unit,
    extremal_grid,
    gamma_breakdown,
)
from analytic_widths.thresholds import check_classical_range, gamma_condition_holds
from commands.run_config import CommandOutput, ExitStatus, RunConfig


def _proof_route(n: int, params: KernelParams) -> Optional[str]:
    """Which theorem turns an observed sign pattern into a width identity at n."""
    if n >= 9 and bool(gamma_condition_holds(n, params.q)):
        return "n_h"
    if check_classical_range(params.h, params.beta):
        return "classical"
    return None


def _verify_row(h: float, beta: float, n: int, cfg: SeriesConfig) -> Dict[str, Any]:
    params = KernelParams(h=h, beta=beta)
    report = verify_C(n, params, cfg)
    gammas = gamma_breakdown(NodeGrid(n=n, y=report.y0), params, cfg)
    route = _proof_route(n, params)
    return {
        "h": h,
        "beta": beta,
        "n": n,
        "certified": report.satisfied and route is not None,
        "route": route,
        "satisfied": report.satisfied,
        "epsilon": report.epsilon,
        "margin": report.margin,
        "sufficient_ok": report.sufficient_ok,
        "sufficient_margin": report.sufficient_margin,
        "certified_lower_bound": report.certified_lower_bound,
        "y0": report.y0,
        "gamma": gammas.gamma,
        "sum_abs_gamma": gammas.sum_abs,
        "lemma3_bound": gammas.lemma3_bound,
        "bound_holds": gammas.bound_holds,
        "umova_z_ok": gammas.umova_z_ok,
        "n_ok": gammas.n_ok,
        "signs": report.signs,
    }


def cmd_verify(config: RunConfig) -> CommandOutput:
    """
    Sign-pattern certification and gamma table for each (h, beta, n).

    Certified means the pattern holds and n is covered by the n_h inequality
    or the classical range; anything less exits with NOT_CERTIFIED.
    """
    cfg = SeriesConfig(abs_tol=config.tol)
    rows = [
        _verify_row(h, beta, n, cfg)
        for h, beta, n in itertools.product(config.h, config.beta, config.n)
    ]
    failed = [row for row in rows if not row["certified"]]
    if failed:
        for row in failed:
            logger.error(
                f"not certified: h={row['h']:g}, beta={row['beta']:g}, n={row['n']} "
                f"(satisfied={row['satisfied']}, route={row['route']})"
            )
        return CommandOutput(
            command=config.command,
            rows=rows,
            exit_status=ExitStatus.NOT_CERTIFIED,
            error_message=f"{len(failed)} of {len(rows)} points not certified",
        )
    return CommandOutput(command=config.command, rows=rows)


def cmd_spline(config: RunConfig) -> CommandOutput:
    """
    Eigenvalues, coefficients and midpoint derivative signs for one (h, beta, n).

    The spline is built at y0 unless --y is given.
    """
    h, beta, n = config.h[0], config.beta[0], config.n[0]
    if len(config.h) * len(config.beta) * len(config.n) > 1:
        logger.warning("spline uses the first value of each range only")
    cfg = SeriesConfig(abs_tol=config.tol)
    params = KernelParams(h=h, beta=beta)
    if config.y is None:
        grid = extremal_grid(n, solve_theta(n, params, cfg).theta)
    else:
        grid = NodeGrid(n=n, y=config.y)
    system = build_fundamental_spline(grid, params, cfg)
    derivative = derivative_from_coefficients(system) / derivative_unit(n, params)

    rows = []
    for l in range(1, 2 * n + 1):
        value = float(derivative[l - 1])
        rows.append(
            {
                "index": l,
                "y": grid.y,
                "alpha_0": float(system.alpha[0]),
                "lambda_re": float(system.lambdas[l - 1].real),
                "lambda_im": float(system.lambdas[l - 1].imag),
                "alpha": float(system.alpha[l]),
                "midpoint": float(grid.midpoints[l - 1]),
                "derivative": value,
                "sign": int(math.copysign(1, value)) if value != 0 else 0,
            }
        )
    return CommandOutput(command=config.command, rows=rows)
