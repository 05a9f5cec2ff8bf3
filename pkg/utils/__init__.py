"""Utility functions package"""
from .numerics import golden_section, bracketed_root, GoldenResult, RootResult
from .validators import validate_positive, validate_open_interval, validate_bracket

__all__ = [
    # Scalar searches
    'golden_section',
    'bracketed_root',
    'GoldenResult',
    'RootResult',

    # Validators
    'validate_positive',
    'validate_open_interval',
    'validate_bracket'
]
