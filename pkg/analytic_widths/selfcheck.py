"""
Oracle-equivalence suite run by the `selfcheck` command.

Each check compares a library result with an independent computation from
analytic_widths.oracle (or a direct inequality evaluation) and reports
pass/fail with its wall time. A check that raises a library error fails with
the error message as detail; it never aborts the rest of the suite.
"""

import math
import time
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np
from loguru import logger

from analytic_widths.domain.kernel import KernelParams, SeriesConfig
from analytic_widths.domain.oracle import CheckResult
from analytic_widths.domain.reports import GAMMA_N_BOUND
from analytic_widths.domain.spline import NodeGrid
from analytic_widths.exceptions import AnalyticWidthsError
from analytic_widths.extremal import (
    asymptotic_decompose,
    best_approx_value,
    eval_Phi,
    solve_theta,
    two_sided_check,
)
from analytic_widths.kushpel import certify_envelope, implication_chain, verify_C
from analytic_widths.oracle import remez_trig, sup_norm
from analytic_widths.series_core import eval_P_q
from analytic_widths.sk_spline import (
    derivative_representation,
    direct_sum_scale,
    extremal_grid,
    gamma_breakdown,
    lambda_closed,
    lambda_direct,
)
from analytic_widths.thresholds import (
    LN_TEN_THIRDS,
    check_classical_range,
    classical_range_threshold,
    gamma_condition_holds,
    locate_n_h,
    n_h,
    n_star,
    p_q_lower_bound,
    star_condition_holds,
)

CheckOutcome = Tuple[bool, str]

SEED = 20240611
# verify_C holds 2n midpoints in memory; larger n go through certify_envelope
DIRECT_CERTIFY_LIMIT = 200_000


def _symmetry_roots(cfg: SeriesConfig) -> CheckOutcome:
    worst = 0.0
    for beta, expected in [(0, 0.5), (2, 0.5), (-2, 0.5), (1, 0.0), (-1, 0.0), (3, 0.0)]:
        for h in (0.5, 1.0, 2.0):
            for n in (3, 5, 10):
                theta = solve_theta(n, KernelParams(h=h, beta=beta), cfg).theta
                worst = max(worst, abs(theta - expected))
    return worst <= 1e-12, f"max |theta - expected| = {worst:.3g}"


def _sup_norm_identity(cfg: SeriesConfig) -> CheckOutcome:
    worst = 0.0
    for h in (0.5, 1.0, 2.0):
        for beta in (0.0, 0.5, 1.0, 1.3):
            params = KernelParams(h=h, beta=beta)
            for n in range(max(3, n_star(h)), 13):
                value = best_approx_value(n, params, cfg).value
                grid = sup_norm(lambda t: np.abs(eval_Phi(t, n, params, cfg)))
                worst = max(worst, abs(value - grid.max_value) / value)
    return worst <= 1e-10, f"max relative gap = {worst:.3g}"


def _remez_equivalence(cfg: SeriesConfig) -> CheckOutcome:
    worst = 0.0
    for beta in (0.0, 0.5, 1.0):
        params = KernelParams(h=1.0, beta=beta)
        for n in (3, 4, 6):
            value = best_approx_value(n, params, cfg).value
            result = remez_trig(lambda t: eval_Phi(t, n, params, cfg), n - 1)
            worst = max(worst, abs(result.error - value))
    return worst <= 1e-8, f"max |remez - value| = {worst:.3g}"


def _threshold_values(cfg: SeriesConfig) -> CheckOutcome:
    ok = n_star(1.0) == 3 and n_h(1.0) == 81 and locate_n_h(1.0) == 81
    ok = ok and bool(star_condition_holds(3, 1.0)) and not bool(star_condition_holds(2, 1.0))
    q = math.exp(-1.0)
    ok = ok and bool(gamma_condition_holds(81, q)) and not np.any(
        gamma_condition_holds(np.arange(9, 81), q)
    )
    ok = ok and all(n_star(h) == 1 for h in (LN_TEN_THIRDS, 1.3, 2.0, 5.0))
    step = 1e-5
    for beta, boundary in ((0.0, 1.644651), (0.5, 1.67423)):
        flip = classical_range_threshold(beta)
        ok = ok and check_classical_range(boundary, beta)
        ok = ok and check_classical_range(flip + step, beta)
        ok = ok and not check_classical_range(flip - step, beta)
    ok = ok and abs(classical_range_threshold(0.0) - 1.644651) <= step
    return ok, f"n_star(1)={n_star(1.0)}, n_h(1)={n_h(1.0)}"


def _eigenvalue_equivalence(cfg: SeriesConfig) -> CheckOutcome:
    rng = np.random.default_rng(SEED)
    worst = 0.0
    for _ in range(200):
        n = int(rng.integers(1, 9))
        params = KernelParams(h=float(rng.uniform(0.5, 2.0)), beta=float(rng.uniform(0, 2)))
        grid = NodeGrid(n=n, y=float(rng.uniform(0, math.pi / n)))
        l = int(rng.integers(1, n + 1))
        closed = lambda_closed(l, grid, params, cfg)
        direct = lambda_direct(l, grid, params, cfg)
        scale = max(abs(closed), direct_sum_scale(grid, params, cfg))
        worst = max(worst, abs(closed - direct) / scale)
    return worst <= 1e-10, f"max relative gap = {worst:.3g}"


def _representation_equivalence(cfg: SeriesConfig) -> CheckOutcome:
    worst = 0.0
    for beta in (0.0, 0.5, 1.0):
        params = KernelParams(h=1.0, beta=beta)
        for n in (6, 81):
            theta = solve_theta(n, params, cfg).theta
            rep = derivative_representation(extremal_grid(n, theta), params, cfg)
            forms = (rep.spsi_v0, rep.sp_psi, rep.sp_phi)
            for a, b in ((0, 1), (1, 2), (0, 2)):
                worst = max(worst, float(np.max(np.abs(forms[a] - forms[b]))))
    return worst <= 1e-9, f"max pairwise gap = {worst:.3g}"


def _certified_points() -> List[Tuple[float, int]]:
    return [(h, locate_n_h(h)) for h in (0.3, 0.5, 1.0, 2.0)]


def _lemma3_bound(cfg: SeriesConfig) -> CheckOutcome:
    failures = []
    for h in (0.5, 1.0, 2.0):
        threshold = locate_n_h(h)
        for beta in (0.0, 0.5, 1.0):
            params = KernelParams(h=h, beta=beta)
            for n in (threshold, threshold + 10):
                theta = solve_theta(n, params, cfg).theta
                report = gamma_breakdown(extremal_grid(n, theta), params, cfg)
                if not (report.bound_holds and all(report.internal_bounds.values())):
                    failures.append(f"h={h:g},beta={beta:g},n={n}")
    return not failures, ", ".join(failures) or "all bounds hold"


def _kushpel_certification(cfg: SeriesConfig) -> CheckOutcome:
    failures = []
    cases = [
        (h, beta, n) for h, n in _certified_points() for beta in (0.0, 0.25, 0.5, 1.0, 1.3)
    ]
    cases.append((2.0, 0.0, 3))
    by_envelope = 0
    for h, beta, n in cases:
        params = KernelParams(h=h, beta=beta)
        if n <= DIRECT_CERTIFY_LIMIT:
            report = verify_C(n, params, cfg)
            ok = report.satisfied and report.margin > 0
        else:
            ok = certify_envelope(n, params, cfg).satisfied
            by_envelope += 1
        if not ok:
            failures.append(f"h={h:g},beta={beta:g},n={n}")
    detail = ", ".join(failures) or (
        f"{len(cases)} points certified, {by_envelope} through the envelope bound"
    )
    return not failures, detail


def _asymptotic_bounds(cfg: SeriesConfig) -> CheckOutcome:
    worst = 0.0
    ok = True
    for h, n in _certified_points():
        for beta in (0.0, 0.25, 0.5, 1.0, 1.3):
            params = KernelParams(h=h, beta=beta)
            gamma = asymptotic_decompose(n, params, cfg)
            worst = max(worst, abs(gamma))
            ok = ok and abs(gamma) <= GAMMA_N_BOUND and two_sided_check(n, params, cfg)
    return ok, f"max |gamma_n| = {worst:.6g} (bound {GAMMA_N_BOUND:.6g})"


def _implication_chain(cfg: SeriesConfig) -> CheckOutcome:
    return implication_chain(), "q in 0.31..0.99, n in 9..200"


def _p_q_lower_bound(cfg: SeriesConfig) -> CheckOutcome:
    x = np.arange(256) * 2.0 * math.pi / 256
    worst = math.inf
    for i in range(1, 20):
        q = 0.05 * i
        worst = min(worst, float(np.min(eval_P_q(x, q, cfg) - p_q_lower_bound(q))))
    return worst > 0, f"min P_q - bound = {worst:.6g}"


CHECKS: Dict[str, Callable[[SeriesConfig], CheckOutcome]] = {
    "symmetry_roots": _symmetry_roots,
    "sup_norm_identity": _sup_norm_identity,
    "remez_equivalence": _remez_equivalence,
    "threshold_values": _threshold_values,
    "eigenvalue_equivalence": _eigenvalue_equivalence,
    "representation_equivalence": _representation_equivalence,
    "lemma3_bound": _lemma3_bound,
    "kushpel_certification": _kushpel_certification,
    "asymptotic_bounds": _asymptotic_bounds,
    "implication_chain": _implication_chain,
    "p_q_lower_bound": _p_q_lower_bound,
}


def run_selfcheck(
    cfg: Optional[SeriesConfig] = None, only: Optional[List[str]] = None
) -> List[CheckResult]:
    """Run the named checks (all by default) in a fixed order."""
    cfg = cfg or SeriesConfig()
    results = []
    for name, check in CHECKS.items():
        if only and name not in only:
            continue
        start = time.perf_counter()
        try:
            passed, detail = check(cfg)
        except AnalyticWidthsError as e:
            passed, detail = False, f"{type(e).__name__}: {e}"
        elapsed = time.perf_counter() - start
        if passed:
            logger.info(f"selfcheck {name}: passed in {elapsed:.2f}s")
        else:
            logger.error(f"selfcheck {name}: FAILED in {elapsed:.2f}s ({detail})")
        results.append(CheckResult(name=name, passed=passed, seconds=elapsed, detail=detail))
    return results
