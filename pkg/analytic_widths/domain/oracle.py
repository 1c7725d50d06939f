from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field


class GridSearchResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    argmax: float
    max_value: float
    refinement_width: float = Field(..., description="Width of the final bracket")


class RemezResult(BaseModel):
    """Best uniform approximation by trigonometric polynomials."""

    model_config = ConfigDict(frozen=True)

    order: int
    error: float = Field(..., description="max |f - p| on the refined grid")
    level: float = Field(..., description="|E| from the last reference solve")
    iterations: int
    reference: List[float] = Field(default_factory=list)


class CheckResult(BaseModel):
    """One acceptance check as run by the self-check suite."""

    name: str
    passed: bool
    seconds: float
    detail: Optional[str] = None
