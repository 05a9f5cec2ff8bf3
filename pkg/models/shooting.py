"""Shooting models: single shots and sweep rows"""
from enum import Enum
from typing import Any, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from models.functionals import FunctionalBreakdown
from models.ode import TerminationReason

class ShotStatus(str, Enum):
    """Outcome of one shooting run"""
    FOUND = "found"
    NO_CRITICAL_POINT = "no-critical-point"
    BLOWUP = "blowup"

class ShotResult(BaseModel):
    """
    One launch of the Euler-Lagrange system from u(0)=1, u''(0)=-a.

    Attributes:
        a: shooting parameter, -u''(0)
        lam: Lagrange parameter
        T: first positive critical point (half-period) when found
        breakdown: quotient integrals over (0, T) when found
        status: found, no-critical-point or blowup
        termination: integrator termination reason
        trajectory: the integrated trajectory, truncated at T when found
    """
    a: float = Field(..., gt=0, description="-u''(0)")
    lam: float = Field(..., alias="lambda", description="Lagrange parameter")
    T: Optional[float] = Field(default=None, description="Half-period")
    breakdown: Optional[FunctionalBreakdown] = Field(default=None)
    status: ShotStatus
    termination: Optional[TerminationReason] = Field(default=None)
    trajectory: Optional[Any] = Field(default=None, exclude=True, repr=False)

    model_config = ConfigDict(populate_by_name=True, arbitrary_types_allowed=True)

    @model_validator(mode='after')
    def validate_found(self) -> "ShotResult":
        """A found shot carries a positive half-period and a breakdown"""
        if self.status == ShotStatus.FOUND:
            if self.T is None or self.T <= 0 or self.breakdown is None:
                raise ValueError("found shots need T > 0 and a breakdown")
        return self

    @property
    def found(self) -> bool:
        return self.status == ShotStatus.FOUND

    @property
    def Q(self) -> Optional[float]:
        return self.breakdown.Q if self.breakdown is not None else None

class SweepRow(BaseModel):
    """One lambda of the J / J-tilde sweep; failed methods leave None"""
    lam: float = Field(..., alias="lambda")
    a_star: Optional[float] = Field(default=None, description="Minimizing a (inner minimization)")
    T1: Optional[float] = Field(default=None, description="T(a*, lambda)")
    J: Optional[float] = Field(default=None, description="Q at (a*, lambda)")
    T2: Optional[float] = Field(default=None, description="T at a = sqrt(lambda)")
    J_tilde: Optional[float] = Field(default=None, description="Q at (sqrt(lambda), lambda)")
    g: Optional[float] = Field(default=None, description="J_tilde + lambda")
    status: str = Field(default="ok", description="ok, or the failure of either method")

    model_config = ConfigDict(populate_by_name=True)

    @property
    def complete(self) -> bool:
        return self.J is not None and self.J_tilde is not None

class InfimumResult(BaseModel):
    """Converged root of J_tilde(lambda) + lambda and its cross-check against J"""
    I_value: float = Field(..., description="Sharp constant, -lambda at the root")
    lam: float = Field(..., alias="lambda", description="Root lambda")
    shot: ShotResult = Field(..., description="Shot at a = sqrt(lambda)")
    bracket: Tuple[float, float] = Field(..., description="Final bracket")
    iterations: int = Field(default=0, ge=0)
    a_star: Optional[float] = Field(default=None, description="Minimizing a at the root")
    J: Optional[float] = Field(default=None, description="Inner-minimization value at the root")

    model_config = ConfigDict(populate_by_name=True)

    @property
    def method_gap(self) -> Optional[float]:
        """|J - J_tilde| at the root"""
        if self.J is None or self.shot.Q is None:
            return None
        return abs(self.J - self.shot.Q)
