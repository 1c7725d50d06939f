import math
from typing import Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from analytic_widths.domain.kernel import KernelParams, SeriesConfig
from analytic_widths.exceptions import DomainError

# relative distance from a node below which a point counts as on the node
_NODE_TOL = 1e-12


class NodeGrid(BaseModel):
    """
    Uniform partition x_k = k*pi/n of [0, 2*pi] shifted by y.

    Interpolation happens at y_k = x_k + y; the spline derivative is constant
    on each (x_{k-1}, x_k), sampled at t_k = k*pi/n - pi/(2n), k = 1..2n.
    """

    model_config = ConfigDict(frozen=True)

    n: int = Field(..., description="Half the number of nodes")
    y: float = Field(0.0, description="Shift of the interpolation nodes")

    @field_validator("n")
    @classmethod
    def validate_n(cls, v):
        if v < 1:
            raise ValueError(f"n must be at least 1, got {v}")
        return v

    @model_validator(mode="after")
    def check_shift(self):
        if not 0.0 <= self.y < math.pi / self.n:
            raise ValueError(f"y must lie in [0, pi/n), got {self.y} for n={self.n}")
        return self

    @property
    def step(self) -> float:
        return math.pi / self.n

    @property
    def nodes(self) -> np.ndarray:
        """x_0..x_{2n}."""
        return np.arange(2 * self.n + 1) * self.step

    @property
    def shifted_nodes(self) -> np.ndarray:
        """y_0..y_{2n-1}."""
        return np.arange(2 * self.n) * self.step + self.y

    @property
    def midpoints(self) -> np.ndarray:
        """t_1..t_{2n}."""
        return (np.arange(1, 2 * self.n + 1) - 0.5) * self.step

    def interval_index(self, t: float) -> int:
        """
        Index k in 1..2n of the interval ((k-1)pi/n, k*pi/n) containing t mod 2pi.

        Raises:
            DomainError: If t sits on a node, where the derivative is undefined
        """
        u = math.fmod(t, 2.0 * math.pi)
        if u < 0:
            u += 2.0 * math.pi
        s = u / self.step
        if abs(s - round(s)) < _NODE_TOL * max(1.0, s):
            raise DomainError(f"t={t} lies on a node of the {2 * self.n}-point grid")
        return min(int(math.floor(s)) + 1, 2 * self.n)


class PiecewiseConstant(BaseModel):
    """Step function on one period: value[i] on (breakpoints[i], breakpoints[i+1])."""

    model_config = ConfigDict(frozen=True)

    breakpoints: List[float]
    values: List[float]

    @model_validator(mode="after")
    def check_shape(self):
        if len(self.breakpoints) != len(self.values) + 1:
            raise ValueError("need exactly one more breakpoint than values")
        if any(b <= a for a, b in zip(self.breakpoints, self.breakpoints[1:])):
            raise ValueError("breakpoints must be strictly increasing")
        return self

    def pieces(self) -> List[Tuple[float, float, float]]:
        return [
            (a, b, v)
            for a, b, v in zip(self.breakpoints, self.breakpoints[1:], self.values)
        ]


class SplineSystem(BaseModel):
    """Fundamental SK-spline: eigenvalues lambda_l(y) and coefficients alpha_k."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    grid: NodeGrid
    params: KernelParams
    lambdas: np.ndarray = Field(..., description="lambda_l(y), l = 1..2n")
    alpha: np.ndarray = Field(..., description="alpha_0..alpha_2n")

    @model_validator(mode="after")
    def check_shape(self):
        two_n = 2 * self.grid.n
        if self.lambdas.shape != (two_n,) or self.alpha.shape != (two_n + 1,):
            raise ValueError("lambdas needs 2n entries and alpha 2n+1")
        return self

    def value(self, x, cfg: Optional[SeriesConfig] = None):
        """alpha_0 + sum_k alpha_k Psi_{beta,1}(x - x_k)."""
        from analytic_widths.series_core import eval_Psi_beta1

        x_arr = np.atleast_1d(np.asarray(x, dtype=np.float64))
        shifts = x_arr[:, None] - self.grid.nodes[None, 1:]
        kernel = eval_Psi_beta1(shifts, self.params, cfg)
        out = self.alpha[0] + kernel @ self.alpha[1:]
        if np.ndim(x) == 0:
            return float(out[0])
        return out


class NormalizedEigenvalues(BaseModel):
    """
    Eigenvalues near the top frequency, scaled to order one.

    mu[j] = (n/psi(n)) q^j lambda_{n-j}(y) for j = 0..n-1, split as
    mu[j] = exp(-ijy) (lead[j] s + r[j]) with s = sign sin(ny - beta*pi/2).
    All arrays carry the same (n/psi(n)) q^j scaling.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    n: int
    y: float
    s: int = Field(..., description="sign sin(ny - beta*pi/2)")
    mu: np.ndarray
    lead: np.ndarray = Field(..., description="scaled psi(n-j)/(n-j) + psi(n+j)/(n+j)")
    r_tail: np.ndarray = Field(..., description="aliased frequencies beyond n+j")
    r_phase: np.ndarray = Field(..., description="imaginary cos(ny - beta*pi/2) part")
    r_shape: np.ndarray = Field(..., description="(|sin| - 1) s part")
    big_r: np.ndarray = Field(..., description="|mu| - lead")

    @property
    def r(self) -> np.ndarray:
        return self.r_tail + self.r_phase + self.r_shape


class GammaBreakdown(BaseModel):
    """Correction terms of the derivative representation at y0 and their bound."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    n: int
    gamma: List[float] = Field(..., description="gamma_1..gamma_5 at the worst midpoint")
    gamma_by_midpoint: np.ndarray = Field(..., description="shape (5, 2n)")
    worst_midpoint: int = Field(..., description="k in 1..2n maximizing sum |gamma|")
    sum_abs: float
    lemma3_bound: float
    umova_z_ok: bool
    n_ok: bool
    internal_bounds: Dict[str, bool] = Field(default_factory=dict)

    @model_validator(mode="after")
    def check_sum(self):
        if len(self.gamma) != 5:
            raise ValueError("gamma needs five entries")
        total = sum(abs(g) for g in self.gamma)
        if abs(total - self.sum_abs) > 1e-12 * max(1.0, total):
            raise ValueError("sum_abs must equal the sum of |gamma|")
        return self

    @property
    def bound_holds(self) -> bool:
        return self.sum_abs <= self.lemma3_bound
