"""
Module initialization file.

This file initializes the oracle module.
"""

# Import submodules
from src.oracle.dense import (
    DEFAULT_ORACLE_CAP, DenseState, apply_two_qubit_gate, dense_rdm, exact_fidelity, run_dense
)

__all__ = ['DEFAULT_ORACLE_CAP', 'DenseState', 'apply_two_qubit_gate', 'dense_rdm', 'exact_fidelity', 'run_dense']
