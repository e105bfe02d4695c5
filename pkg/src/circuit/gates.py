"""
Two-qubit gate module.

This module provides the nearest-neighbor gate value type and Haar-random gate
sampling.
"""

import logging
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from src.errors import InvalidQubitError, NonUnitaryGateError, ShapeMismatchError
from src.tensor_core import SeedLike, as_generator, haar_isometry, unitarity_deviation

logger = logging.getLogger(__name__)

UNITARITY_TOLERANCE = 1e-12


@dataclass(frozen=True, eq=False)
class Gate:
    """
    A two-qubit unitary on the adjacent pair (q, q + 1).

    The matrix is indexed (out_q, out_q+1) x (in_q, in_q+1), qubit q most significant.

    Args:
        pair (Tuple[int, int]): Target qubits
        matrix (np.ndarray): 4x4 unitary
    """

    pair: Tuple[int, int]
    matrix: np.ndarray

    def __post_init__(self):
        q, r = (int(x) for x in self.pair)
        if q < 0 or r != q + 1:
            raise InvalidQubitError(f"Gate pair {self.pair} is not of the form (q, q+1)")
        mat = np.array(self.matrix, dtype=complex, copy=True)
        if mat.shape != (4, 4):
            raise ShapeMismatchError(f"Gate matrix must be 4x4, got {mat.shape}")
        deviation = unitarity_deviation(mat)
        if deviation > UNITARITY_TOLERANCE:
            raise NonUnitaryGateError(f"Gate on {self.pair} deviates from unitarity by {deviation:.3e}")
        mat.setflags(write=False)
        object.__setattr__(self, "pair", (q, r))
        object.__setattr__(self, "matrix", mat)

    @property
    def tensor(self) -> np.ndarray:
        """The gate with axes (out_q, out_q+1, in_q, in_q+1)."""
        return self.matrix.reshape(2, 2, 2, 2)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Gate):
            return NotImplemented
        return self.pair == other.pair and np.array_equal(self.matrix, other.matrix)

    def __hash__(self) -> int:
        return hash((self.pair, self.matrix.tobytes()))


def random_two_qubit_gate(seed: SeedLike = None, pair: Tuple[int, int] = (0, 1)) -> Gate:
    """
    Sample a Haar-random two-qubit gate.

    Real and imaginary parts of a 4x4 matrix are drawn from a standard normal
    distribution; the phase-corrected QR factor is the gate.

    Args:
        seed: Generator or seed
        pair (Tuple[int, int]): Target qubits

    Returns:
        Gate: Random gate
    """
    return Gate(pair, haar_isometry(4, 4, as_generator(seed)).array)
