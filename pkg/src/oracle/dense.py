"""
Dense state-vector module.

This module is the exact reference simulator for small chains. It works on
plain amplitude arrays, independently of the tensor-network code, with qubit 0
as the most significant bit of the amplitude index.
"""

import logging
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from src.circuit import Circuit
from src.errors import InvalidQubitError, ShapeMismatchError, StateCapError
from src.mera import MeraNetwork, to_statevector

logger = logging.getLogger(__name__)

DEFAULT_ORACLE_CAP = 12
NORM_TOLERANCE = 1e-10


@dataclass(frozen=True, eq=False)
class DenseState:
    """
    A normalized state of n qubits as 2^n amplitudes.

    Args:
        n (int): Number of qubits
        amplitudes (np.ndarray): Complex vector of length 2^n
        cap (int): Largest accepted n
    """

    n: int
    amplitudes: np.ndarray
    cap: int = DEFAULT_ORACLE_CAP

    def __post_init__(self):
        if self.cap > DEFAULT_ORACLE_CAP:
            raise StateCapError(f"Dense state cap {self.cap} exceeds the limit of {DEFAULT_ORACLE_CAP} qubits")
        if not 1 <= self.n <= self.cap:
            raise StateCapError(f"Dense states hold 1..{self.cap} qubits, got {self.n}")
        amplitudes = np.array(self.amplitudes, dtype=complex, copy=True).reshape(-1)
        if amplitudes.size != 2 ** self.n:
            raise ShapeMismatchError(f"{self.n} qubits need {2 ** self.n} amplitudes, got {amplitudes.size}")
        norm = np.linalg.norm(amplitudes)
        if abs(norm - 1.0) > NORM_TOLERANCE:
            raise ShapeMismatchError(f"State norm is {norm:.12f}, expected 1")
        amplitudes.setflags(write=False)
        object.__setattr__(self, "amplitudes", amplitudes)

    @classmethod
    def zero_state(cls, n: int, cap: int = DEFAULT_ORACLE_CAP) -> "DenseState":
        """The all-up basis state e_0."""
        if not 1 <= n <= min(cap, DEFAULT_ORACLE_CAP):
            raise StateCapError(f"Dense states hold 1..{min(cap, DEFAULT_ORACLE_CAP)} qubits, got {n}")
        amplitudes = np.zeros(2 ** n, dtype=complex)
        amplitudes[0] = 1.0
        return cls(n, amplitudes, cap)

    def tensor(self) -> np.ndarray:
        return self.amplitudes.reshape((2,) * self.n)


def _check_qubits(n: int, qubits: Sequence[int]) -> Tuple[int, ...]:
    qubits = tuple(int(q) for q in qubits)
    if len(set(qubits)) != len(qubits) or any(not 0 <= q < n for q in qubits):
        raise InvalidQubitError(f"Invalid qubits {qubits} for {n} qubits")
    return qubits


def apply_two_qubit_gate(state: DenseState, matrix: np.ndarray, pair: Sequence[int]) -> DenseState:
    """
    Apply a 4x4 matrix to two qubits.

    Args:
        state (DenseState): Input state
        matrix (np.ndarray): Gate indexed (out_a, out_b) x (in_a, in_b)
        pair (Sequence[int]): Qubits (a, b)

    Returns:
        DenseState: Output state
    """
    a, b = _check_qubits(state.n, pair)
    gate = np.asarray(matrix, dtype=complex).reshape(2, 2, 2, 2)
    moved = np.tensordot(gate, state.tensor(), axes=([2, 3], [a, b]))
    result = np.moveaxis(moved, [0, 1], [a, b])
    return DenseState(state.n, result.reshape(-1), state.cap)


def run_dense(circuit: Circuit, initial: DenseState) -> DenseState:
    """
    Apply every gate of a circuit in order.

    Args:
        circuit (Circuit): Circuit on ``initial.n`` qubits
        initial (DenseState): Input state

    Returns:
        DenseState: Final state
    """
    if circuit.n != initial.n:
        raise ShapeMismatchError(f"Circuit has {circuit.n} qubits, state has {initial.n}")
    state = initial
    for gate in circuit.gates:
        state = apply_two_qubit_gate(state, gate.matrix, gate.pair)
    return state


def exact_fidelity(state: DenseState, network: MeraNetwork) -> float:
    """
    Squared overlap of a dense state with the state of a network.

    Args:
        state (DenseState): Reference state
        network (MeraNetwork): Network on the same number of qubits

    Returns:
        float: |<state|psi>|^2
    """
    if network.num_qubits != state.n:
        raise ShapeMismatchError(f"Network has {network.num_qubits} qubits, state has {state.n}")
    psi = to_statevector(network, cap=state.cap).array
    return float(abs(np.vdot(state.amplitudes, psi)) ** 2)


def dense_rdm(state: DenseState, qubits: Sequence[int]) -> np.ndarray:
    """
    Reduced density matrix by tracing out the other qubits.

    Args:
        state (DenseState): State
        qubits (Sequence[int]): One or two qubits; the first is most significant

    Returns:
        np.ndarray: Matrix of dimension 2^len(qubits)
    """
    qubits = _check_qubits(state.n, qubits)
    if not 1 <= len(qubits) <= 2:
        raise InvalidQubitError(f"Reduced density matrices cover one or two qubits, got {len(qubits)}")
    kept = np.moveaxis(state.tensor(), list(qubits), list(range(len(qubits))))
    block = kept.reshape(2 ** len(qubits), -1)
    return block @ block.conj().T
