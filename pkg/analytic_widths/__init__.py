"""
analytic-widths: exact Kolmogorov widths of classes of functions analytic in a strip.

Public symbols are exported lazily so that `import analytic_widths` stays
cheap and environment-driven defaults are read only when first needed.
"""

from importlib import import_module
from typing import Dict, Tuple

__all__ = [
    # Domain types
    "KernelParams",
    "SeriesConfig",
    "NodeGrid",
    "SplineSystem",
    "WidthReport",
    "ThresholdReport",
    "SignPatternReport",
    "EnvelopeCertificate",
    "GammaBreakdown",
    # Kernel series
    "psi",
    "eval_H",
    "eval_Psi_beta1",
    "eval_P_q",
    "epsilon_n",
    "truncation_index",
    # Extremal function
    "eval_Phi",
    "solve_theta",
    "best_approx_value",
    "asymptotic_decompose",
    "two_sided_bounds",
    "two_sided_check",
    # Thresholds
    "n_star",
    "n_h",
    "locate_n_h",
    "rho_star",
    "check_classical_range",
    "check_umova_z",
    "check_umova_n0",
    "threshold_report",
    # Splines
    "lambda_direct",
    "lambda_closed",
    "build_fundamental_spline",
    "eval_derivative_repr",
    "gamma_breakdown",
    # Certification
    "verify_C",
    "certify_envelope",
    "implication_chain",
    # Oracles
    "sup_norm",
    "remez_trig",
    "quadrature_convolution",
]

_EXPORTS: Dict[str, Tuple[str, str]] = {
    # domain
    "KernelParams": (".domain", "KernelParams"),
    "SeriesConfig": (".domain", "SeriesConfig"),
    "NodeGrid": (".domain", "NodeGrid"),
    "SplineSystem": (".domain", "SplineSystem"),
    "WidthReport": (".domain", "WidthReport"),
    "ThresholdReport": (".domain", "ThresholdReport"),
    "SignPatternReport": (".domain", "SignPatternReport"),
    "EnvelopeCertificate": (".domain", "EnvelopeCertificate"),
    "GammaBreakdown": (".domain", "GammaBreakdown"),
    # series_core
    "psi": (".series_core", "psi"),
    "eval_H": (".series_core", "eval_H"),
    "eval_Psi_beta1": (".series_core", "eval_Psi_beta1"),
    "eval_P_q": (".series_core", "eval_P_q"),
    "epsilon_n": (".series_core", "epsilon_n"),
    "truncation_index": (".series_core", "truncation_index"),
    # extremal
    "eval_Phi": (".extremal", "eval_Phi"),
    "solve_theta": (".extremal", "solve_theta"),
    "best_approx_value": (".extremal", "best_approx_value"),
    "asymptotic_decompose": (".extremal", "asymptotic_decompose"),
    "two_sided_bounds": (".extremal", "two_sided_bounds"),
    "two_sided_check": (".extremal", "two_sided_check"),
    # thresholds
    "n_star": (".thresholds", "n_star"),
    "n_h": (".thresholds", "n_h"),
    "locate_n_h": (".thresholds", "locate_n_h"),
    "rho_star": (".thresholds", "rho_star"),
    "check_classical_range": (".thresholds", "check_classical_range"),
    "check_umova_z": (".thresholds", "check_umova_z"),
    "check_umova_n0": (".thresholds", "check_umova_n0"),
    "threshold_report": (".thresholds", "threshold_report"),
    # sk_spline
    "lambda_direct": (".sk_spline", "lambda_direct"),
    "lambda_closed": (".sk_spline", "lambda_closed"),
    "build_fundamental_spline": (".sk_spline", "build_fundamental_spline"),
    "eval_derivative_repr": (".sk_spline", "eval_derivative_repr"),
    "gamma_breakdown": (".sk_spline", "gamma_breakdown"),
    # kushpel
    "verify_C": (".kushpel", "verify_C"),
    "certify_envelope": (".kushpel", "certify_envelope"),
    "implication_chain": (".kushpel", "implication_chain"),
    # oracle
    "sup_norm": (".oracle", "sup_norm"),
    "remez_trig": (".oracle", "remez_trig"),
    "quadrature_convolution": (".oracle", "quadrature_convolution"),
}


def __getattr__(name: str):
    target = _EXPORTS.get(name)
    if target is None:
        raise AttributeError(f"module '{__name__}' has no attribute '{name}'")
    module_name, attr_name = target
    module = import_module(module_name, __name__)
    value = getattr(module, attr_name)
    globals()[name] = value
    return value


def __dir__():
    return sorted(set(globals().keys()) | set(__all__))
