"""
Circuit module.

This module provides the circuit value type and the checkerboard layout of
random nearest-neighbor gates on an open chain.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

from src.circuit.gates import Gate, random_two_qubit_gate
from src.errors import InvalidQubitError, ShapeMismatchError
from src.tensor_core import as_generator

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Circuit:
    """
    An ordered list of nearest-neighbor gates.

    Args:
        n (int): Number of qubits
        k (int): Number of checkerboard layers
        gates (Tuple[Gate, ...]): Gates in application order
        seed (int, optional): Seed the gates were drawn from
    """

    n: int
    k: int
    gates: Tuple[Gate, ...]
    seed: Optional[int] = None

    def __post_init__(self):
        if self.n < 2:
            raise ShapeMismatchError(f"A circuit needs at least 2 qubits, got {self.n}")
        if self.k < 0:
            raise ShapeMismatchError(f"Layer count must be non-negative, got {self.k}")
        object.__setattr__(self, "gates", tuple(self.gates))
        for index, gate in enumerate(self.gates):
            if gate.pair[1] >= self.n:
                raise InvalidQubitError(f"Gate {index} on {gate.pair} is out of range for {self.n} qubits")

    @property
    def gate_count(self) -> int:
        return len(self.gates)

    @property
    def nominal_gate_count(self) -> int:
        """The n * k count of the surrogate exponent as usually quoted."""
        return self.n * self.k

    def sublayers(self) -> List[List[Gate]]:
        """
        Split the gate list into maximal runs of same-parity pairs moving left to right.

        Starting qubits within a run increase by at least 2, so the gates of a
        run act on disjoint qubits.

        Returns:
            List[List[Gate]]: Runs in application order
        """
        runs: List[List[Gate]] = []
        for gate in self.gates:
            last = runs[-1][-1].pair[0] if runs else None
            if last is not None and last % 2 == gate.pair[0] % 2 and gate.pair[0] > last:
                runs[-1].append(gate)
            else:
                runs.append([gate])
        return runs


def checkerboard_pairs(n: int) -> List[Tuple[int, int]]:
    """
    Pairs of one checkerboard layer: (0,1), (2,3), ... then (1,2), (3,4), ...

    Args:
        n (int): Number of qubits

    Returns:
        List[Tuple[int, int]]: n - 1 adjacent pairs
    """
    even = [(q, q + 1) for q in range(0, n - 1, 2)]
    odd = [(q, q + 1) for q in range(1, n - 1, 2)]
    return even + odd


def checkerboard_circuit(n: int, k: int, seed: Optional[int] = None) -> Circuit:
    """
    Generate a checkerboard circuit of Haar-random gates.

    Args:
        n (int): Number of qubits, at least 2
        k (int): Number of layers; each layer holds n - 1 gates
        seed (int, optional): Seed of the gate stream

    Returns:
        Circuit: k * (n - 1) gates
    """
    if n < 2:
        raise ShapeMismatchError(f"A circuit needs at least 2 qubits, got {n}")
    rng = as_generator(seed)
    pairs = checkerboard_pairs(n)
    gates = [random_two_qubit_gate(rng, pair) for _ in range(k) for pair in pairs]
    logger.debug(f"Generated checkerboard circuit n={n}, k={k}, seed={seed} with {len(gates)} gates")
    return Circuit(n, k, tuple(gates), seed)
