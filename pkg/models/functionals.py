"""Quotient models: integral breakdowns and sampled functions"""
from typing import Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from core.exceptions import UndefinedQuotientError

class FunctionalBreakdown(BaseModel):
    """
    The three integrals of the quotient over one interval.

    Attributes:
        A: integral of u''^2
        B: integral of u'' u^2
        C: integral of u^4
        Q: (A - B) / C, derived from the other three
        interval: (x_lo, x_hi)
    """
    A: float = Field(..., ge=0.0, description="Integral of u''^2")
    B: float = Field(..., description="Integral of u'' u^2")
    C: float = Field(..., gt=0.0, description="Integral of u^4")
    Q: float = Field(..., description="Rayleigh quotient (A - B) / C")
    interval: Tuple[float, float] = Field(..., description="(x_lo, x_hi)")

    model_config = ConfigDict(frozen=True)

    @model_validator(mode='after')
    def validate_quotient(self) -> "FunctionalBreakdown":
        """Q must be derived from A, B, C"""
        if not np.isclose(self.Q * self.C, self.A - self.B, rtol=1e-12, atol=1e-300):
            raise ValueError("Q must equal (A - B) / C")
        return self

    @classmethod
    def from_integrals(
        cls,
        A: float,
        B: float,
        C: float,
        interval: Tuple[float, float]
    ) -> "FunctionalBreakdown":
        """Build a breakdown, rejecting the zero function"""
        if not C > 0.0:
            raise UndefinedQuotientError(
                message="undefined quotient: the quartic integral vanishes",
                details={"A": A, "B": B, "C": C, "interval": interval}
            )
        return cls(A=max(A, 0.0), B=B, C=C, Q=(max(A, 0.0) - B) / C, interval=interval)

class SampledFunction(BaseModel):
    """A function known on a grid, optionally with its second derivative"""
    grid: np.ndarray = Field(..., description="Strictly increasing positions")
    values: np.ndarray = Field(..., description="u at the grid points")
    derivs: Optional[np.ndarray] = Field(default=None, description="u'' at the grid points")

    model_config = ConfigDict(arbitrary_types_allowed=True)

    @field_validator('grid', 'values', 'derivs', mode='before')
    @classmethod
    def as_float_array(cls, v):
        """Coerce sequences to 1-D float arrays"""
        if v is None:
            return v
        return np.asarray(v, dtype=float).ravel()

    @model_validator(mode='after')
    def validate_grid(self) -> "SampledFunction":
        """Same lengths, strictly increasing, finite"""
        if self.grid.size != self.values.size:
            raise ValueError("grid and values must have the same length")
        if self.derivs is not None and self.derivs.size != self.grid.size:
            raise ValueError("derivs must match the grid length")
        if np.any(np.diff(self.grid) <= 0):
            raise ValueError("grid must be strictly increasing")
        if not (np.all(np.isfinite(self.grid)) and np.all(np.isfinite(self.values))):
            raise ValueError("samples must be finite")
        return self

    def __len__(self) -> int:
        return int(self.grid.size)

    @property
    def spacing(self) -> Optional[float]:
        """Uniform step, or None when the grid is not uniform"""
        steps = np.diff(self.grid)
        h = float(np.mean(steps))
        return h if np.allclose(steps, h, rtol=1e-8, atol=0.0) else None

class MinimizerProfile(SampledFunction):
    """One full period of the minimizer with its jet and first-integral residual"""
    du: np.ndarray = Field(..., description="u' at the grid points")
    d3u: np.ndarray = Field(..., description="u''' at the grid points")
    h_residual: np.ndarray = Field(..., description="First-integral residual per sample")
    I_value: float = Field(..., description="Constant used in the first integral")
    T: float = Field(..., gt=0, description="Half-period")
    a: float = Field(..., gt=0, description="-u''(0)")

    @field_validator('du', 'd3u', 'h_residual', mode='before')
    @classmethod
    def as_column(cls, v):
        return np.asarray(v, dtype=float).ravel()
