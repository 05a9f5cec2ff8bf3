"""
Models package initialization.

This module organizes all models into logical groups:
1. Dynamical-system models (ode) - phase states, trajectories, integrator config
2. Quotient models (functionals) - breakdowns and sampled functions
3. Shooting models (shooting) - shots and sweep rows
4. Oracle and run models (oracles, run)
"""

# Dynamical-system Models
from .ode import (
    PhaseState,
    AugmentedState,
    IntegratorConfig,
    Trajectory,
    TrajectoryMeta,
    TerminationReason
)

# Quotient Models
from .functionals import FunctionalBreakdown, SampledFunction, MinimizerProfile

# Shooting Models
from .shooting import ShotStatus, ShotResult, SweepRow, InfimumResult

# Oracle and Run Models
from .oracles import OracleReport, Comparison, IdentityResiduals
from .run import RunConfig, InfimumReport, VerifyReport, QReport

__all__ = [
    # Dynamical-system Models
    'PhaseState',
    'AugmentedState',
    'IntegratorConfig',
    'Trajectory',
    'TrajectoryMeta',
    'TerminationReason',

    # Quotient Models
    'FunctionalBreakdown',
    'SampledFunction',
    'MinimizerProfile',

    # Shooting Models
    'ShotStatus',
    'ShotResult',
    'SweepRow',
    'InfimumResult',

    # Oracle and Run Models
    'OracleReport',
    'Comparison',
    'IdentityResiduals',
    'RunConfig',
    'InfimumReport',
    'VerifyReport',
    'QReport'
]
