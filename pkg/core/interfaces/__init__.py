"""Interface package initialization"""
from .base import BaseInterface
from .service import RunnerInterface

__all__ = [
    'BaseInterface',
    'RunnerInterface'
]
