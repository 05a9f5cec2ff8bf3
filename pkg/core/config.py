"""
Application configuration and settings.

This module handles all configuration aspects of the solver:
1. Environment variables and settings (prefix ``OSCIMIN_``)
2. Integrator, root-finding and sweep defaults
3. Application constants
"""
from pathlib import Path
from enum import Enum
from typing import Optional
from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict
from functools import lru_cache

class Settings(BaseSettings):
    """Application settings with environment validation"""

    # Project Configuration
    PROJECT_NAME: str = Field(default="oscimin", description="Project name")
    VERSION: str = Field(default="1.0.0", description="Project version")
    DEBUG: bool = Field(default=False, description="Debug mode")
    LOG_LEVEL: str = Field(default="INFO", description="Logging level")
    LOG_DIR: Optional[Path] = Field(default=None, description="Directory for rotating log files")

    # Integrator
    REL_TOL: float = Field(default=1e-10, gt=0, description="Relative local-error tolerance")
    ABS_TOL: float = Field(default=1e-12, gt=0, description="Absolute local-error tolerance")
    MAX_STEP: float = Field(default=0.5, gt=0, description="Maximum step size")
    X_MAX: float = Field(default=50.0, gt=0, description="Integration horizon")
    BLOWUP_THRESHOLD: float = Field(default=1e8, gt=1, description="|u| cap")
    ODE_METHOD: str = Field(default="RK45", description="Embedded Runge-Kutta pair")
    EVENT_XTOL: float = Field(default=1e-12, gt=0, description="Event position tolerance")
    MIN_EVENT_X: float = Field(default=1e-8, ge=0, description="Sign changes before this x are ignored")

    # Root solve on lambda
    ROOT_TOL: float = Field(default=1e-10, gt=0, description="Bracket width at convergence")
    ROOT_MAX_ITER: int = Field(default=60, gt=0, description="Bisection iteration cap")
    REGULA_FALSI_WIDTH: float = Field(default=1e-2, gt=0, description="Bracket width enabling regula falsi")
    BRACKET_LO: float = Field(default=0.141, description="Default lower lambda")
    BRACKET_HI: float = Field(default=0.249, description="Default upper lambda")
    RETRACT_STEP: float = Field(default=1e-3, gt=0, description="Inward retraction after a failed shot")

    # Inner minimization over a
    A_SCAN_LO: float = Field(default=0.05, gt=0, description="Lower end of the a scan")
    A_SCAN_HI: float = Field(default=1.5, gt=0, description="Upper end of the a scan")
    A_SCAN_POINTS: int = Field(default=30, ge=3, description="Log-spaced scan points")
    A_TOL: float = Field(default=1e-8, gt=0, description="Golden-section tolerance in a")

    # Sweep and profile
    SWEEP_FROM: float = Field(default=0.142, description="First swept lambda")
    SWEEP_TO: float = Field(default=0.248, description="Last swept lambda")
    SWEEP_STEP: float = Field(default=0.002, gt=0, description="Sweep step")
    PROFILE_SAMPLES: int = Field(default=2001, ge=5, description="Samples over one full period")
    THREADS: int = Field(default=1, ge=1, description="Sweep concurrency cap")

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        env_prefix="OSCIMIN_",
        case_sensitive=True,
        extra="ignore",
        use_enum_values=True
    )

# Application Constants
class OutputFormat(str, Enum):
    """Supported result formats"""
    CSV = "csv"
    JSON = "json"

NEG_QUARTER = -0.25
NINE_64 = 9.0 / 64.0

@lru_cache()
def get_settings() -> Settings:
    """Get cached settings instance"""
    return Settings()

# Create settings instance
settings = get_settings()

