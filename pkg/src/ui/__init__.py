"""
Module initialization file.

This file initializes the ui module.
"""

# Import submodules
from src.ui.cli import main

__all__ = ['main']
