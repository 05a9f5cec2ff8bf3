"""Command-line front end package"""
from .cli import main

__all__ = ['main']
