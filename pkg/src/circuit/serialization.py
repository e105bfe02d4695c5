"""
Circuit serialization module.

This module defines the JSON circuit document and converts circuits to and
from it, re-validating every gate on load.
"""

import json
import logging
import os
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, Field, ValidationError

from src.circuit.circuit import Circuit
from src.circuit.gates import Gate
from src.errors import CircuitFormatError, MeraSimError

logger = logging.getLogger(__name__)


class GateDocument(BaseModel):
    """Serialized gate."""

    pair: Tuple[int, int] = Field(..., description="Target qubits (q, q+1)")
    matrix: List[List[Tuple[float, float]]] = Field(..., description="4x4 row-major [re, im] entries")


class CircuitDocument(BaseModel):
    """Serialized circuit."""

    n: int = Field(..., description="Number of qubits")
    k: int = Field(..., description="Number of checkerboard layers")
    seed: Optional[int] = Field(None, description="Seed the gates were drawn from")
    gates: List[GateDocument] = Field(default_factory=list, description="Gates in application order")


def circuit_to_dict(circuit: Circuit) -> Dict[str, Any]:
    """
    Convert a circuit to its document form.

    Args:
        circuit (Circuit): Circuit

    Returns:
        Dict[str, Any]: JSON-ready document
    """
    return {
        "n": circuit.n,
        "k": circuit.k,
        "seed": circuit.seed,
        "gates": [
            {
                "pair": list(gate.pair),
                "matrix": [[[float(z.real), float(z.imag)] for z in row] for row in gate.matrix],
            }
            for gate in circuit.gates
        ],
    }


def circuit_from_dict(document: Dict[str, Any]) -> Circuit:
    """
    Rebuild a circuit from its document form.

    Args:
        document (Dict[str, Any]): Document produced by ``circuit_to_dict``

    Returns:
        Circuit: Validated circuit

    Raises:
        CircuitFormatError: If the document is malformed or a gate is not unitary
    """
    try:
        doc = CircuitDocument.model_validate(document)
        gates = []
        for index, gate_doc in enumerate(doc.gates):
            entries = np.asarray(gate_doc.matrix, dtype=float)
            if entries.shape != (4, 4, 2):
                raise CircuitFormatError(f"Gate {index} matrix has shape {entries.shape[:-1]}, expected 4x4")
            gates.append(Gate(gate_doc.pair, entries[..., 0] + 1j * entries[..., 1]))
        return Circuit(doc.n, doc.k, tuple(gates), doc.seed)
    except CircuitFormatError:
        raise
    except (ValidationError, MeraSimError, ValueError) as e:
        raise CircuitFormatError(f"Invalid circuit document: {e}") from e


def serialize(circuit: Circuit) -> str:
    return json.dumps(circuit_to_dict(circuit))


def deserialize(text: str) -> Circuit:
    try:
        document = json.loads(text)
    except json.JSONDecodeError as e:
        raise CircuitFormatError(f"Circuit document is not valid JSON: {e}") from e
    return circuit_from_dict(document)


def save_circuit(circuit: Circuit, path: str) -> str:
    """
    Write a circuit to a JSON file.

    Args:
        circuit (Circuit): Circuit
        path (str): Output file

    Returns:
        str: Absolute path of the written file
    """
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w") as f:
        f.write(serialize(circuit))
    logger.info(f"Saved circuit with {circuit.gate_count} gates to {path}")
    return os.path.abspath(path)


def load_circuit(path: str) -> Circuit:
    """
    Read a circuit from a JSON file.

    Args:
        path (str): Input file

    Returns:
        Circuit: Validated circuit
    """
    try:
        with open(path, "r") as f:
            text = f.read()
    except OSError as e:
        logger.error(f"Failed to read circuit file {path}: {e}")
        raise CircuitFormatError(f"Failed to read circuit file {path}: {e}") from e
    return deserialize(text)
