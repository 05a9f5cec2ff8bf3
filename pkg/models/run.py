"""Run configuration and command reports for the command-line front end"""
from pathlib import Path
from typing import Any, List, Optional, Tuple

from pydantic import BaseModel, Field, ValidationError as PydanticValidationError, model_validator

from core.config import settings, OutputFormat
from core.exceptions import ConfigurationError
from models.ode import IntegratorConfig
from models.oracles import OracleReport

class RunConfig(BaseModel):
    """Everything one CLI invocation needs"""
    integrator: IntegratorConfig = Field(default_factory=IntegratorConfig)
    root_tol: float = Field(default=settings.ROOT_TOL, gt=0)
    bracket: Tuple[float, float] = Field(default=(settings.BRACKET_LO, settings.BRACKET_HI))
    sweep_from: float = Field(default=settings.SWEEP_FROM)
    sweep_to: float = Field(default=settings.SWEEP_TO)
    sweep_step: float = Field(default=settings.SWEEP_STEP, gt=0)
    samples: int = Field(default=settings.PROFILE_SAMPLES, ge=5)
    threads: int = Field(default=settings.THREADS, ge=1)
    output_format: OutputFormat = Field(default=OutputFormat.CSV)
    output_path: Optional[Path] = Field(default=None)

    @model_validator(mode='after')
    def validate_ranges(self) -> "RunConfig":
        """Bracket ordered and sweep range non-empty"""
        lo, hi = self.bracket
        if not lo < hi:
            raise ValueError("bracket_lo must be below bracket_hi")
        if self.sweep_to < self.sweep_from:
            raise ValueError("sweep range is empty")
        return self

    @classmethod
    def from_settings(cls, **overrides: Any) -> "RunConfig":
        """Defaults from settings, overridden by explicit non-None values"""
        integrator_keys = set(IntegratorConfig.model_fields)
        integrator_args = {k: v for k, v in overrides.items() if k in integrator_keys and v is not None}
        run_args = {k: v for k, v in overrides.items() if k not in integrator_keys and v is not None}
        try:
            return cls(integrator=IntegratorConfig.from_settings(**integrator_args), **run_args)
        except PydanticValidationError as e:
            raise ConfigurationError(
                message=f"invalid run configuration: {e.errors()[0]['msg']}",
                details={"overrides": {k: str(v) for k, v in overrides.items()}},
                original_error=e
            )

class InfimumReport(BaseModel):
    """Flat summary of a converged solve; the only nested field is the oracle list"""
    I: float = Field(..., description="Sharp constant")
    T: float = Field(..., description="Half-period of the minimizer")
    a: float = Field(..., description="-u''(0)")
    A: float = Field(..., description="Half-period integral of u''^2")
    B: float = Field(..., description="Half-period integral of u'' u^2")
    C: float = Field(..., description="Half-period integral of u^4")
    Q: float = Field(..., description="Half-period quotient")
    iterations: int = Field(default=0)
    oracles: List[OracleReport] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(o.passed for o in self.oracles)

class VerifyReport(BaseModel):
    """Oracle suite outcome"""
    I: Optional[float] = Field(default=None, description="I the checks were run against")
    injected: bool = Field(default=False, description="I was supplied instead of computed")
    oracles: List[OracleReport] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return bool(self.oracles) and all(o.passed for o in self.oracles)

    @property
    def failed(self) -> List[str]:
        return [o.name for o in self.oracles if not o.passed]

class QReport(BaseModel):
    """Quotient of a user-supplied sample file"""
    n: int = Field(..., ge=5)
    periodic: bool
    A: float
    B: float
    C: float
    Q: float
    parts_residual: float = Field(..., description="|int u'' u^2 + 2 int u u'^2|")
    boundary_term: Optional[float] = Field(default=None, description="[u' u^2] between the ends (non-periodic only)")
    oracles: List[OracleReport] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(o.passed for o in self.oracles)
