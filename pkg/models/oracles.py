"""Oracle report model"""
from enum import Enum
from typing import Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

class Comparison(str, Enum):
    """How observed is compared with expected"""
    CLOSE = "close"          # |observed - expected| <= tolerance
    AT_LEAST = "at_least"    # observed >= expected - tolerance
    AT_MOST = "at_most"      # observed <= expected + tolerance
    BETWEEN = "between"      # expected < observed < upper

class OracleReport(BaseModel):
    """Outcome of one analytic check"""
    name: str = Field(..., description="Check identifier")
    expected: float = Field(..., description="Expected value or bound")
    observed: float = Field(..., description="Observed value")
    tolerance: float = Field(default=0.0, ge=0.0, description="Allowed deviation")
    comparison: Comparison = Field(default=Comparison.CLOSE)
    upper: Optional[float] = Field(default=None, description="Upper end for BETWEEN")
    passed: bool = Field(default=False)
    note: str = Field(default="", description="Caveats attached to the check")

    @model_validator(mode='after')
    def evaluate(self) -> "OracleReport":
        """passed is always recomputed from the comparison"""
        self.passed = self._compare()
        return self

    def _compare(self) -> bool:
        obs = self.observed
        if obs != obs:  # NaN
            return False
        if self.comparison == Comparison.CLOSE:
            return abs(obs - self.expected) <= self.tolerance
        if self.comparison == Comparison.AT_LEAST:
            return obs >= self.expected - self.tolerance
        if self.comparison == Comparison.AT_MOST:
            return obs <= self.expected + self.tolerance
        return self.upper is not None and self.expected < obs < self.upper

    @classmethod
    def close(cls, name: str, expected: float, observed: float, tolerance: float, note: str = "") -> "OracleReport":
        return cls(name=name, expected=expected, observed=observed, tolerance=tolerance, note=note)

    @classmethod
    def at_least(cls, name: str, bound: float, observed: float, tolerance: float = 0.0, note: str = "") -> "OracleReport":
        return cls(name=name, expected=bound, observed=observed, tolerance=tolerance,
                   comparison=Comparison.AT_LEAST, note=note)

    @classmethod
    def at_most(cls, name: str, bound: float, observed: float, tolerance: float = 0.0, note: str = "") -> "OracleReport":
        return cls(name=name, expected=bound, observed=observed, tolerance=tolerance,
                   comparison=Comparison.AT_MOST, note=note)

    @classmethod
    def between(cls, name: str, lower: float, upper: float, observed: float, note: str = "") -> "OracleReport":
        return cls(name=name, expected=lower, upper=upper, observed=observed,
                   comparison=Comparison.BETWEEN, note=note)

class IdentityResiduals(BaseModel):
    """
    Integral identities of a half-period shot, doubled to one full period.

    Residuals are divided by the full-period quartic integral.
    """
    lam: float = Field(..., alias="lambda", description="Lagrange parameter the identities are tested with")
    T: float = Field(..., gt=0, description="Half-period")
    a: float = Field(..., gt=0, description="-u''(0)")
    C: float = Field(..., gt=0, description="Full-period integral of u^4")
    multiplier: float = Field(..., description="(A + 3D + 2 lam C) / C")
    virial: float = Field(..., description="(T(lam - a^2) + 3A/2 + D - lam C/2) / C")
    value: float = Field(..., description="(A + 2D + lam C) / C")
    a_squared_implied: float = Field(..., description="a^2 solved from the virial identity")

    model_config = ConfigDict(populate_by_name=True)

    @property
    def residuals(self) -> Tuple[float, float, float]:
        return self.multiplier, self.virial, self.value
