import math
from enum import Enum
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from analytic_widths.domain.kernel import KernelParams

GAMMA_N_BOUND = 28.0 / (3.0 * math.pi)


class ThetaSolution(BaseModel):
    """Root of the phase equation on [0, 1) with residual and uniqueness evidence."""

    model_config = ConfigDict(frozen=True)

    theta: float = Field(..., description="Root in [0, 1)")
    residual: float = Field(
        ..., description="Equation value at theta, in units of the leading coefficient"
    )
    bracket: Tuple[float, float] = Field(
        ..., description="Final bracket on the unwrapped axis"
    )
    unique: bool = Field(..., description="Sign scan found exactly one sign change")
    sign_changes: int = Field(..., description="Sign changes seen by the scan")

    @field_validator("theta")
    @classmethod
    def validate_theta(cls, v):
        if not 0.0 <= v < 1.0:
            raise ValueError(f"theta must lie in [0, 1), got {v}")
        return v


class WidthReport(BaseModel):
    """Common value of the best approximation and the widths, with validity flags."""

    model_config = ConfigDict(frozen=True)

    n: int
    h: float
    beta: float
    value: float = Field(..., description="(4/pi)|sum| = sup-norm of H * sign sin(nt)")
    value_over_psi: float = Field(..., description="value * cosh(nh)")
    theta: ThetaSolution
    n_star: int
    n_h: Optional[int] = Field(
        None, description="Width threshold; None when beyond the scan cap"
    )
    valid_E: bool
    valid_width: bool
    gamma_n: float = Field(..., description="Asymptotic remainder coefficient")
    gamma_bound: float = GAMMA_N_BOUND

    @model_validator(mode="after")
    def check_flags(self):
        if self.value < 0:
            raise ValueError("value must be nonnegative")
        if self.valid_width and not self.valid_E:
            raise ValueError("valid_width requires valid_E")
        return self


class TwoSidedBounds(BaseModel):
    """Two-sided estimate of the width series around its leading term."""

    model_config = ConfigDict(frozen=True)

    n: int
    lower: float
    middle: float
    upper: float
    scaled_remainder: float = Field(
        ..., description="(middle/psi(n) - 1) / q^(2n), free of cancellation"
    )
    relative_gap: float = Field(..., description="(upper - lower) / middle")
    holds: bool


class ThresholdBranch(str, Enum):
    """How n_star was obtained."""

    DIRECT = "direct"
    SCANNED = "scanned"


class ThresholdReport(BaseModel):
    """Every explicit validity threshold at one h."""

    model_config = ConfigDict(frozen=True)

    h: float
    n_star: int
    n_h: Optional[int] = Field(None, description="None when beyond the scan cap")
    branch: ThresholdBranch
    rho_condition_met: bool
    persistent: bool = Field(
        ..., description="Scanned inequality also holds on the next 50 integers"
    )
    beta: Optional[float] = None
    classical_range: Optional[bool] = None

    @field_validator("n_star")
    @classmethod
    def validate_n_star(cls, v):
        if v < 1:
            raise ValueError("n_star must be at least 1")
        return v

    @model_validator(mode="after")
    def check_order(self):
        if self.n_h is not None and (self.n_h < 9 or self.n_h < self.n_star):
            raise ValueError(
                f"n_h={self.n_h} must be >= 9 and >= n_star={self.n_star}"
            )
        return self


class ImplicationReport(BaseModel):
    """Grid verification of the chain of sufficient conditions."""

    model_config = ConfigDict(frozen=True)

    points: int
    antecedent_points: int
    violations: Dict[str, int] = Field(default_factory=dict)
    first_violation: Optional[Tuple[float, int, str]] = None

    @property
    def holds(self) -> bool:
        return not any(self.violations.values())


class SignPatternReport(BaseModel):
    """Outcome of the alternating-sign check of the spline derivative."""

    model_config = ConfigDict(frozen=True)

    n: int
    params: KernelParams
    y0: float
    signs: List[int] = Field(..., description="Derivative signs at the 2n midpoints")
    epsilon: Optional[int] = Field(None, description="Pattern constant, +1 or -1")
    e_flags: List[bool]
    satisfied: bool
    margin: float = Field(
        ..., description="min_k eps (-1)^k v_k in units of pi/(4n psi(n))"
    )
    sufficient_ok: bool = Field(
        ..., description="P_q(t_k - y0) + s * sum(gamma) >= 0 at every midpoint"
    )
    sufficient_margin: float
    certified_lower_bound: Optional[float] = Field(
        None, description="Width lower bound, recorded only when satisfied"
    )

    @model_validator(mode="after")
    def check_pattern(self):
        if len(self.signs) != 2 * self.n or len(self.e_flags) != 2 * self.n:
            raise ValueError("signs and e_flags must have 2n entries")
        if self.satisfied and self.margin < 0:
            raise ValueError("a satisfied pattern cannot have negative margin")
        return self


class EnvelopeCertificate(BaseModel):
    """
    Lower bound of the normalized derivative envelope over the whole circle.

    The envelope is the eps-signed derivative as a function of a continuous
    offset tau; its minimum bounds the 2n midpoint values from below, so a
    positive margin certifies the sign pattern without evaluating all 2n
    midpoints.
    """

    model_config = ConfigDict(frozen=True)

    n: int
    params: KernelParams
    y0: float
    epsilon: Optional[int] = Field(None, description="Pattern constant, +1 or -1")
    harmonics: int = Field(..., description="Harmonics kept explicitly, j = 0..harmonics-1")
    grid_points: int = Field(..., description="Uniform samples of the envelope")
    grid_min: float
    curvature_bound: float = Field(..., description="Largest drop between samples")
    tail_bound: float = Field(..., description="Bound on the dropped harmonics")
    roundoff_bound: float
    margin: float = Field(
        ..., description="grid_min minus every bound, in units of pi/(4n psi(n))"
    )
    satisfied: bool

    @model_validator(mode="after")
    def check_certificate(self):
        if self.satisfied and (self.epsilon is None or self.margin <= 0):
            raise ValueError("a satisfied certificate needs epsilon and a positive margin")
        return self
