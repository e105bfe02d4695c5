"""
Module initialization file.

This file initializes the stiefel module.
"""

# Import submodules
from src.stiefel.manifold import StiefelPoint, project_tangent, retract, transport
from src.stiefel.adam import AdamState, OptimizerConfig, Preconditioner, adam_step

__all__ = [
    'StiefelPoint', 'project_tangent', 'retract', 'transport',
    'AdamState', 'OptimizerConfig', 'Preconditioner', 'adam_step'
]
