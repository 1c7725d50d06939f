from enum import Enum, IntEnum
from pathlib import Path
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field, field_validator

from analytic_widths.domain.kernel import MAX_H
from analytic_widths.utils.formatting import OutputFormat


class Command(str, Enum):
    WIDTHS = "widths"
    SWEEP = "sweep"
    THRESHOLDS = "thresholds"
    VERIFY = "verify"
    SPLINE = "spline"
    SELFCHECK = "selfcheck"


class ExitStatus(IntEnum):
    OK = 0
    USAGE = 1
    NOT_CERTIFIED = 2
    NUMERICAL = 3


class RunConfig(BaseModel):
    """One command-line invocation with its ranges already expanded."""

    command: Command
    h: List[float] = Field(default_factory=lambda: [1.0])
    beta: List[float] = Field(default_factory=lambda: [0.0])
    n: List[int] = Field(default_factory=lambda: [3])
    tol: float = Field(1e-14, description="Absolute tail tolerance of every series")
    format: OutputFormat = OutputFormat.JSON
    out: Optional[Path] = None
    y: Optional[float] = Field(None, description="Node shift for the spline command")
    checks: List[str] = Field(default_factory=list, description="Selfcheck subset")

    @field_validator("h")
    @classmethod
    def validate_h(cls, v):
        if not v:
            raise ValueError("h range is empty")
        for h in v:
            if not 0 < h <= MAX_H:
                raise ValueError(f"h must lie in (0, {MAX_H:g}], got {h}")
        return v

    @field_validator("beta")
    @classmethod
    def validate_beta(cls, v):
        if not v:
            raise ValueError("beta range is empty")
        return v

    @field_validator("n")
    @classmethod
    def validate_n(cls, v):
        if not v:
            raise ValueError("n range is empty")
        if min(v) < 1:
            raise ValueError(f"n must be at least 1, got {min(v)}")
        return v

    @field_validator("tol")
    @classmethod
    def validate_tol(cls, v):
        if not v > 0:
            raise ValueError(f"tol must be positive, got {v}")
        return v

    def params(self) -> Dict[str, Any]:
        """The run parameters echoed into JSON output."""
        return self.model_dump(mode="json", exclude={"command", "format", "out"})


class CommandOutput(BaseModel):
    """What a command handler hands back to the entry point."""

    command: Command
    rows: List[Dict[str, Any]] = Field(default_factory=list)
    checks: List[Dict[str, Any]] = Field(default_factory=list)
    exit_status: ExitStatus = ExitStatus.OK
    error_message: Optional[str] = None
