"""Core package initialization"""
from .config import (
    settings,
    get_settings,
    OutputFormat
)

__all__ = [
    'settings',
    'get_settings',
    'OutputFormat'
]
