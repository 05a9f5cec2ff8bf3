"""Shared fixtures: the converged solve is computed once per session"""
import sys
from pathlib import Path

# Add project root to Python path
project_root = str(Path(__file__).parent.parent)
sys.path.insert(0, project_root)

import pytest

from models.ode import IntegratorConfig
from services.shooting import find_infimum, minimizer_profile

@pytest.fixture(scope="session")
def integrator() -> IntegratorConfig:
    """Default integrator configuration"""
    return IntegratorConfig()

@pytest.fixture(scope="session")
def infimum(integrator):
    """Root of J_tilde(lambda) + lambda on the default bracket, cross-checked against J"""
    return find_infimum(integrator)

@pytest.fixture(scope="session")
def profile(infimum):
    """One period of the minimizer at the default sample count"""
    return minimizer_profile(infimum.shot, 2001)
