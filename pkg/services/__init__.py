"""Services package initialization"""
from .experiment_runner import experiment_runner, ExperimentRunner

__all__ = [
    'experiment_runner',
    'ExperimentRunner'
]
