"""
Module initialization file.

This file initializes the simulation module.
"""

# Import submodules
from src.simulation.env_config import EnvConfig
from src.simulation.models import (
    ErrorRecord, GateRecord, RunConfig, SimulationRecord, SweepCellStatus, layers_for_qubits
)
from src.simulation.runner import prepare_initial_state, run_simulation, surrogate_summary, trace_to_file
from src.simulation.sweep_manager import SweepManager, SweepResult, sweep_table
from src.simulation.output import gate_table, read_record, write_record, write_sweep

__all__ = [
    'EnvConfig',
    'ErrorRecord', 'GateRecord', 'RunConfig', 'SimulationRecord', 'SweepCellStatus', 'layers_for_qubits',
    'prepare_initial_state', 'run_simulation', 'surrogate_summary', 'trace_to_file',
    'SweepManager', 'SweepResult', 'sweep_table',
    'gate_table', 'read_record', 'write_record', 'write_sweep'
]
