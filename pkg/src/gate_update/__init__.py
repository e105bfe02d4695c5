"""
Module initialization file.

This file initializes the gate_update module.
"""

# Import submodules
from src.gate_update.options import GateUpdateOptions
from src.gate_update.overlap import (
    FidelityEvaluation, OverlapNetwork, cone_environments, environment,
    fidelity_and_gradients, fidelity_gradient, overlap
)
from src.gate_update.updater import GateUpdateResult, apply_gate, validate_gate
from src.gate_update.initialization import (
    UP_PROJECTOR, InitializationResult, initialization_objective, initialize_optimized
)

__all__ = [
    'GateUpdateOptions',
    'FidelityEvaluation', 'OverlapNetwork', 'cone_environments', 'environment',
    'fidelity_and_gradients', 'fidelity_gradient', 'overlap',
    'GateUpdateResult', 'apply_gate', 'validate_gate',
    'UP_PROJECTOR', 'InitializationResult', 'initialization_objective', 'initialize_optimized'
]
