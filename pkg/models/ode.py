"""Dynamical-system models: phase states, augmented states, trajectories"""
from enum import Enum
from typing import Any, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from core.config import settings

# Layout of the augmented state vector
U, DU, D2U, D3U, ACC_A, ACC_B, ACC_C, ACC_D = range(8)
PHASE_DIM = 4
STATE_DIM = 8

class TerminationReason(str, Enum):
    """Why an integration stopped"""
    HORIZON = "horizon"
    BLOWUP = "blowup"
    EVENT = "event"

class PhaseState(BaseModel):
    """The 4-jet (u, u', u'', u''') of the unknown at position x"""
    x: float = Field(default=0.0, description="Position")
    u: float = Field(..., description="Value")
    du: float = Field(..., description="First derivative")
    d2u: float = Field(..., description="Second derivative")
    d3u: float = Field(..., description="Third derivative")

    model_config = ConfigDict(frozen=True)

    @field_validator('x', 'u', 'du', 'd2u', 'd3u')
    @classmethod
    def validate_finite(cls, v: float) -> float:
        """Reject NaN and infinities"""
        if not np.isfinite(v):
            raise ValueError("phase state components must be finite")
        return v

    def as_array(self) -> np.ndarray:
        """Return (u, du, d2u, d3u) as a vector"""
        return np.array([self.u, self.du, self.d2u, self.d3u], dtype=float)

    @classmethod
    def from_array(cls, x: float, values: np.ndarray) -> "PhaseState":
        """Build a state from the first four components of a vector"""
        return cls(x=float(x), u=float(values[U]), du=float(values[DU]),
                   d2u=float(values[D2U]), d3u=float(values[D3U]))

    @classmethod
    def launch(cls, a: float) -> "PhaseState":
        """Shooting launch point u(0)=1, u'(0)=0, u''(0)=-a, u'''(0)=0"""
        return cls(x=0.0, u=1.0, du=0.0, d2u=-a, d3u=0.0)

class AugmentedState(BaseModel):
    """Phase state plus running integrals from the start of the trajectory"""
    phase: PhaseState
    acc_A: float = Field(..., ge=0.0, description="Running integral of u''^2")
    acc_B: float = Field(..., description="Running integral of u'' u^2")
    acc_C: float = Field(..., ge=0.0, description="Running integral of u^4")
    acc_D: float = Field(default=0.0, description="Running integral of u u'^2")

    model_config = ConfigDict(frozen=True)

    @classmethod
    def from_array(cls, x: float, values: np.ndarray) -> "AugmentedState":
        """Build from a full state vector; rounding-level negatives are clipped"""
        return cls(
            phase=PhaseState.from_array(x, values),
            acc_A=max(float(values[ACC_A]), 0.0),
            acc_B=float(values[ACC_B]),
            acc_C=max(float(values[ACC_C]), 0.0),
            acc_D=float(values[ACC_D])
        )

class IntegratorConfig(BaseModel):
    """Tolerances and limits of the adaptive integrator"""
    rel_tol: float = Field(default=settings.REL_TOL, gt=0, description="Relative local-error tolerance")
    abs_tol: float = Field(default=settings.ABS_TOL, gt=0, description="Absolute local-error tolerance")
    max_step: float = Field(default=settings.MAX_STEP, gt=0, description="Maximum step size")
    x_max: float = Field(default=settings.X_MAX, gt=0, description="Integration horizon")
    blowup_threshold: float = Field(default=settings.BLOWUP_THRESHOLD, gt=1, description="|u| cap")
    method: str = Field(default=settings.ODE_METHOD, description="scipy explicit Runge-Kutta pair")
    event_xtol: float = Field(default=settings.EVENT_XTOL, gt=0, description="Event position tolerance")
    min_event_x: float = Field(default=settings.MIN_EVENT_X, ge=0, description="Ignore sign changes before this x")

    model_config = ConfigDict(frozen=True)

    @field_validator('method')
    @classmethod
    def validate_method(cls, v: str) -> str:
        """Only explicit embedded pairs with dense output are supported"""
        if v not in {"RK45", "DOP853"}:
            raise ValueError("method must be RK45 or DOP853")
        return v

    @classmethod
    def from_settings(cls, **overrides: Any) -> "IntegratorConfig":
        """Defaults from the environment, with explicit overrides"""
        return cls(**{k: v for k, v in overrides.items() if v is not None})

    def refined(self, factor: float = 0.5) -> "IntegratorConfig":
        """Same config with both tolerances scaled by factor"""
        return self.model_copy(update={"rel_tol": self.rel_tol * factor, "abs_tol": self.abs_tol * factor})

class TrajectoryMeta(BaseModel):
    """Integrator bookkeeping for one trajectory"""
    n_steps: int = Field(..., ge=0, description="Accepted steps")
    n_rhs: int = Field(default=0, ge=0, description="Right-hand side evaluations")
    min_step: float = Field(default=0.0, description="Smallest accepted step")
    max_step: float = Field(default=0.0, description="Largest accepted step")
    termination: TerminationReason = Field(..., description="Why integration stopped")

class Trajectory(BaseModel):
    """Ordered augmented states with continuous extension between them"""
    x: np.ndarray = Field(..., description="Strictly increasing positions")
    y: np.ndarray = Field(..., description="State vectors, shape (8, n)")
    lam: float = Field(..., alias="lambda", description="Lagrange parameter used")
    meta: TrajectoryMeta
    dense: Optional[Any] = Field(default=None, exclude=True, repr=False,
                                 description="scipy OdeSolution over [x[0], x[-1]]")

    model_config = ConfigDict(arbitrary_types_allowed=True, populate_by_name=True)

    @model_validator(mode='after')
    def validate_grid(self) -> "Trajectory":
        """Grid strictly increasing and consistent with the states"""
        if self.y.shape != (STATE_DIM, self.x.size):
            raise ValueError("state array must have shape (8, len(x))")
        if self.x.size > 1 and np.any(np.diff(self.x) <= 0):
            raise ValueError("trajectory positions must be strictly increasing")
        return self

    def __len__(self) -> int:
        return int(self.x.size)

    @property
    def x_lo(self) -> float:
        return float(self.x[0])

    @property
    def x_hi(self) -> float:
        return float(self.x[-1])

    def contains(self, x: float) -> bool:
        return self.x_lo <= x <= self.x_hi

    def evaluate(self, xs: np.ndarray) -> np.ndarray:
        """State vectors at arbitrary positions inside the trajectory, shape (8, m)"""
        xs = np.atleast_1d(np.asarray(xs, dtype=float))
        if np.any(xs < self.x_lo) or np.any(xs > self.x_hi):
            raise ValueError(f"positions outside trajectory range [{self.x_lo}, {self.x_hi}]")
        if self.dense is None:
            return np.vstack([np.interp(xs, self.x, row) for row in self.y])
        values = np.asarray(self.dense(xs)).reshape(STATE_DIM, -1)
        # grid points are returned exactly
        hits = np.searchsorted(self.x, xs)
        for j, (xj, k) in enumerate(zip(xs, hits)):
            if k < self.x.size and self.x[k] == xj:
                values[:, j] = self.y[:, k]
        return values

    def at(self, x: float) -> AugmentedState:
        """Augmented state at one position"""
        return AugmentedState.from_array(x, self.evaluate(np.array([x]))[:, 0])
