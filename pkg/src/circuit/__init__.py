"""
Module initialization file.

This file initializes the circuit module.
"""

# Import submodules
from src.circuit.gates import Gate, random_two_qubit_gate
from src.circuit.circuit import Circuit, checkerboard_circuit, checkerboard_pairs
from src.circuit.serialization import (
    circuit_from_dict, circuit_to_dict, deserialize, load_circuit, save_circuit, serialize
)

__all__ = [
    'Gate', 'random_two_qubit_gate',
    'Circuit', 'checkerboard_circuit', 'checkerboard_pairs',
    'circuit_from_dict', 'circuit_to_dict', 'deserialize', 'load_circuit', 'save_circuit', 'serialize'
]
