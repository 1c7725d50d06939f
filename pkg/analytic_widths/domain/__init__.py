"""
Domain models for analytic-widths.

Immutable pydantic value types shared by the computational modules.
"""

from analytic_widths.domain.kernel import KernelParams, SeriesConfig
from analytic_widths.domain.oracle import CheckResult, GridSearchResult, RemezResult
from analytic_widths.domain.reports import (
    GAMMA_N_BOUND,
    EnvelopeCertificate,
    ImplicationReport,
    SignPatternReport,
    ThetaSolution,
    ThresholdBranch,
    ThresholdReport,
    TwoSidedBounds,
    WidthReport,
)
from analytic_widths.domain.spline import (
    GammaBreakdown,
    NodeGrid,
    NormalizedEigenvalues,
    PiecewiseConstant,
    SplineSystem,
)

__all__: list[str] = [
    "CheckResult",
    "EnvelopeCertificate",
    "GAMMA_N_BOUND",
    "GammaBreakdown",
    "GridSearchResult",
    "ImplicationReport",
    "KernelParams",
    "NodeGrid",
    "NormalizedEigenvalues",
    "PiecewiseConstant",
    "RemezResult",
    "SeriesConfig",
    "SignPatternReport",
    "SplineSystem",
    "ThetaSolution",
    "ThresholdBranch",
    "ThresholdReport",
    "TwoSidedBounds",
    "WidthReport",
]
