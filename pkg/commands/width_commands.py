"""
Handlers for the width-valued commands: widths, sweep and thresholds.

Environment Variables:
    WIDTHS_THREADS: Worker threads for sweep rows (default: CPU count)
"""

import itertools
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Dict, List, Tuple

from loguru import logger

from analytic_widths.config import THREADS
from analytic_widths.domain.kernel import KernelParams, SeriesConfig
from analytic_widths.extremal import best_approx_value, two_sided_bounds
from analytic_widths.thresholds import threshold_report
from commands.run_config import CommandOutput, ExitStatus, RunConfig


def _grid(config: RunConfig) -> List[Tuple[float, float, int]]:
    return list(itertools.product(config.h, config.beta, config.n))


def _width_row(h: float, beta: float, n: int, cfg: SeriesConfig) -> Dict[str, Any]:
    report = best_approx_value(n, KernelParams(h=h, beta=beta), cfg)
    return {
        "h": h,
        "beta": beta,
        "n": n,
        "value": report.value,
        "value_over_psi": report.value_over_psi,
        "theta": report.theta.theta,
        "theta_residual": report.theta.residual,
        "theta_unique": report.theta.unique,
        "gamma_n": report.gamma_n,
        "n_star": report.n_star,
        "n_h": report.n_h,
        "valid_E": report.valid_E,
        "valid_width": report.valid_width,
    }


def _sweep_row(point: Tuple[float, float, int], cfg: SeriesConfig) -> Dict[str, Any]:
    h, beta, n = point
    row = _width_row(h, beta, n, cfg)
    bounds = two_sided_bounds(n, KernelParams(h=h, beta=beta), cfg)
    row.update(
        {
            "lower": bounds.lower,
            "upper": bounds.upper,
            "relative_gap": bounds.relative_gap,
            "two_sided_holds": bounds.holds,
        }
    )
    return row


def cmd_widths(config: RunConfig) -> CommandOutput:
    """One WidthReport row per (h, beta, n)."""
    cfg = SeriesConfig(abs_tol=config.tol)
    rows = [_width_row(h, beta, n, cfg) for h, beta, n in _grid(config)]
    return CommandOutput(command=config.command, rows=rows)


def cmd_sweep(config: RunConfig) -> CommandOutput:
    """
    Plot-ready width rows over the h x beta x n product, computed in parallel.

    Rows come back in grid order whatever order the workers finish in.
    """
    cfg = SeriesConfig(abs_tol=config.tol)
    points = _grid(config)
    workers = max(1, min(THREADS, len(points)))
    start_time = time.time()
    logger.info(f"Sweeping {len(points)} points on {workers} threads")
    with ThreadPoolExecutor(max_workers=workers) as pool:
        rows = list(pool.map(lambda point: _sweep_row(point, cfg), points))
    logger.info(f"Sweep finished in {time.time() - start_time:.2f}s")
    return CommandOutput(command=config.command, rows=rows)


def cmd_thresholds(config: RunConfig) -> CommandOutput:
    """
    n_star, n_h and the classical-range flag for each (h, beta).

    A width threshold beyond the scan cap is emitted as null and turns the
    exit status numerical.
    """
    rows = []
    status = ExitStatus.OK
    for h, beta in itertools.product(config.h, config.beta):
        report = threshold_report(h, beta)
        if report.n_h is None:
            status = ExitStatus.NUMERICAL
        rows.append(
            {
                "h": h,
                "beta": beta,
                "n_star": report.n_star,
                "n_h": report.n_h,
                "branch": report.branch,
                "persistent": report.persistent,
                "rho_condition_met": report.rho_condition_met,
                "classical_range": report.classical_range,
            }
        )
    message = None if status is ExitStatus.OK else "n_h beyond the scan cap for some h"
    return CommandOutput(
        command=config.command, rows=rows, exit_status=status, error_message=message
    )
