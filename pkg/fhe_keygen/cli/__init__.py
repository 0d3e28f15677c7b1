"""
Command line interface for fhe-keygen.
"""

from .main import main

__all__ = [
    "main",
]
