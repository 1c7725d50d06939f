import math

from pydantic import BaseModel, ConfigDict, Field, computed_field, field_validator

from analytic_widths.config import DEFAULT_ABS_TOL, DEFAULT_MAX_TERMS, MIN_ABS_TOL
from analytic_widths.exceptions import ToleranceUnreachableError

# exp(-h) leaves the normal binary64 range beyond this
MAX_H = 700.0


class KernelParams(BaseModel):
    """
    Identifies one convolution class: strip half-width h and phase beta.

    The kernel is H(t) = sum_k cos(kt - beta*pi/2) / cosh(kh); q = exp(-h) is
    the ratio the coefficient sequence tends to.
    """

    model_config = ConfigDict(frozen=True)

    h: float = Field(..., description="Half-width of the analyticity strip")
    beta: float = Field(0.0, description="Phase parameter of the kernel")

    @field_validator("h")
    @classmethod
    def validate_h(cls, v):
        if not math.isfinite(v) or v <= 0:
            raise ValueError(f"h must be a positive finite number, got {v}")
        if v > MAX_H:
            raise ValueError(f"h must not exceed {MAX_H} (q = exp(-h) underflows)")
        return v

    @field_validator("beta")
    @classmethod
    def validate_beta(cls, v):
        if not math.isfinite(v):
            raise ValueError(f"beta must be finite, got {v}")
        return v

    @computed_field  # type: ignore[prop-decorator]
    @property
    def q(self) -> float:
        return math.exp(-self.h)

    @property
    def half_phase(self) -> float:
        """beta*pi/2 reduced modulo 2*pi."""
        return math.fmod(self.beta, 4.0) * math.pi / 2.0

    @property
    def is_integer_beta(self) -> bool:
        return float(self.beta).is_integer()


class SeriesConfig(BaseModel):
    """Truncation policy shared by every kernel series."""

    model_config = ConfigDict(frozen=True)

    abs_tol: float = Field(
        default=DEFAULT_ABS_TOL, description="Absolute bound on the discarded tail"
    )
    max_terms: int = Field(
        default=DEFAULT_MAX_TERMS, description="Largest admissible truncation index"
    )

    @field_validator("abs_tol")
    @classmethod
    def validate_abs_tol(cls, v):
        if not v > 0:
            raise ValueError(f"abs_tol must be positive, got {v}")
        if v < MIN_ABS_TOL:
            raise ToleranceUnreachableError(
                f"abs_tol={v:g} is unreachable: binary64 partial sums cannot "
                f"resolve tails below {MIN_ABS_TOL:g}"
            )
        return v

    @field_validator("max_terms")
    @classmethod
    def validate_max_terms(cls, v):
        if v < 1:
            raise ValueError("max_terms must be at least 1")
        return v
