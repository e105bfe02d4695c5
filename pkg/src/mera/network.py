"""
MERA network module.

This module provides the immutable ternary MERA value type together with its
constructors (analytic product state, Haar-random fixture), constraint checks
and the exact absorption of single-qubit gates.
"""

import logging
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Dict, List, Mapping, Optional, Tuple

import numpy as np

from src.errors import ConstraintViolationError, InvalidQubitError, NonUnitaryGateError, ShapeMismatchError
from src.mera.topology import (
    TensorId, TensorKind, col_axes, row_axes, site_tensor, tensor_ids, top_id, wires_at_level
)
from src.tensor_core import (
    ComplexTensor, MatrixView, SeedLike, as_generator, contract, haar_isometry, isometry_deviation,
    move_axes, orthonormal_completion, unitarity_deviation
)

logger = logging.getLogger(__name__)

CONSTRAINT_TOLERANCE = 1e-10
GATE_TOLERANCE = 1e-12


def level_dimensions(num_layers: int, chi: int) -> Tuple[int, ...]:
    """Wire dimensions of levels 0..M-1: 2 for the qubits, then min(previous^3, chi)."""
    dims = [2]
    for _ in range(1, num_layers):
        dims.append(min(dims[-1] ** 3, chi))
    return tuple(dims)


@dataclass(frozen=True, eq=False)
class MeraNetwork:
    """
    A ternary MERA on n = 3^M qubits with bond cap chi.

    Args:
        num_layers (int): Number of layers M >= 1
        chi (int): Bond dimension cap >= 2
        tensors (Mapping[TensorId, ComplexTensor]): One tensor per id of ``tensor_ids(M)``
    """

    num_layers: int
    chi: int
    tensors: Mapping[TensorId, ComplexTensor]
    wire_dims: Tuple[int, ...] = field(init=False)

    def __post_init__(self):
        if self.num_layers < 1:
            raise ShapeMismatchError(f"A network needs at least one layer, got {self.num_layers}")
        if self.chi < 2:
            raise ShapeMismatchError(f"Bond cap chi must be at least 2, got {self.chi}")
        object.__setattr__(self, "wire_dims", level_dimensions(self.num_layers, self.chi))
        tensors = dict(self.tensors)
        expected = tensor_ids(self.num_layers)
        if set(tensors) != set(expected):
            missing = sorted(str(t) for t in set(expected) - set(tensors))
            extra = sorted(str(t) for t in set(tensors) - set(expected))
            raise ShapeMismatchError(f"Tensor set mismatch: missing {missing}, unexpected {extra}")
        for tid in expected:
            if tensors[tid].shape != self.expected_shape(tid):
                raise ShapeMismatchError(
                    f"Tensor {tid} has shape {tensors[tid].shape}, expected {self.expected_shape(tid)}"
                )
        object.__setattr__(self, "tensors", MappingProxyType({tid: tensors[tid] for tid in expected}))

    @property
    def num_qubits(self) -> int:
        return wires_at_level(self.num_layers, 0)

    @property
    def ids(self) -> List[TensorId]:
        return list(self.tensors)

    @property
    def top(self) -> ComplexTensor:
        return self.tensors[top_id(self.num_layers)]

    def expected_shape(self, tid: TensorId) -> Tuple[int, ...]:
        """
        Shape required for a tensor id.

        Args:
            tid (TensorId): Tensor id

        Returns:
            Tuple[int, ...]: Axis lengths in the documented axis order
        """
        if tid.kind is TensorKind.TOP:
            d = self.wire_dims[self.num_layers - 1]
            return (d, d, d)
        d = self.wire_dims[tid.layer - 1]
        if tid.kind is TensorKind.DISENTANGLER:
            return (d, d, d, d)
        return (self.wire_dims[tid.layer], d, d, d)

    def matrix_view(self, tid: TensorId, tensor: Optional[ComplexTensor] = None) -> MatrixView:
        tensor = self.tensors[tid] if tensor is None else tensor
        return MatrixView(tensor, row_axes(tid.kind), col_axes(tid.kind))

    def stiefel_matrix(self, tid: TensorId) -> np.ndarray:
        """Constraint matrix of a tensor: upper wires as rows, lower wires as columns."""
        return self.matrix_view(tid).matrix()

    def from_stiefel_matrix(self, tid: TensorId, matrix: np.ndarray) -> ComplexTensor:
        """Fold a constraint matrix back into the tensor layout of ``tid``."""
        return self.matrix_view(tid).fold(matrix)

    def with_tensors(self, updates: Mapping[TensorId, ComplexTensor]) -> "MeraNetwork":
        """
        Return a network with some tensors replaced; unchanged tensors are shared.

        Args:
            updates (Mapping[TensorId, ComplexTensor]): Replacement tensors

        Returns:
            MeraNetwork: New network value
        """
        unknown = [str(t) for t in updates if t not in self.tensors]
        if unknown:
            raise ShapeMismatchError(f"Unknown tensor ids {unknown}")
        merged = dict(self.tensors)
        merged.update(updates)
        return MeraNetwork(self.num_layers, self.chi, merged)

    def constraint_violations(self) -> Dict[TensorId, float]:
        """
        Deviation of every tensor from its constraint.

        Returns:
            Dict[TensorId, float]: Max-entry deviation of W W^dagger (and W^dagger W for
            disentanglers) from the identity, or |<t,t> - 1| for the top tensor
        """
        deviations = {}
        for tid in self.tensors:
            matrix = self.stiefel_matrix(tid)
            if tid.kind is TensorKind.TOP:
                deviations[tid] = abs(float(np.vdot(matrix, matrix).real) - 1.0)
            elif tid.kind is TensorKind.DISENTANGLER:
                deviations[tid] = max(isometry_deviation(matrix), unitarity_deviation(matrix))
            else:
                deviations[tid] = isometry_deviation(matrix)
        return deviations

    def max_constraint_deviation(self) -> float:
        return max(self.constraint_violations().values())

    def validate(self, tolerance: float = CONSTRAINT_TOLERANCE) -> None:
        """
        Check every constraint.

        Args:
            tolerance (float): Largest accepted deviation

        Raises:
            ConstraintViolationError: If any tensor deviates by more than ``tolerance``
        """
        failures = {str(tid): dev for tid, dev in self.constraint_violations().items() if dev > tolerance}
        if failures:
            raise ConstraintViolationError(f"Constraints violated beyond {tolerance:.1e}: {failures}")

    def __repr__(self) -> str:
        return f"MeraNetwork(num_layers={self.num_layers}, chi={self.chi}, wire_dims={self.wire_dims})"


def wire_dimension(network: MeraNetwork, layer: int) -> int:
    """
    Dimension of the wires leaving a layer upward.

    Args:
        network (MeraNetwork): Network
        layer (int): 0 for the qubit wires, l for the wires above layer l, M above the top

    Returns:
        int: Wire dimension; 1 for layer M, whose output is a scalar
    """
    if not 0 <= layer <= network.num_layers:
        raise ShapeMismatchError(f"Layer {layer} out of range 0..{network.num_layers}")
    if layer == network.num_layers:
        return 1
    return network.wire_dims[layer]


def _empty(num_layers: int, chi: int) -> Tuple[Tuple[int, ...], List[TensorId]]:
    if num_layers < 1:
        raise ShapeMismatchError(f"A network needs at least one layer, got {num_layers}")
    if chi < 2:
        raise ShapeMismatchError(f"Bond cap chi must be at least 2, got {chi}")
    return level_dimensions(num_layers, chi), tensor_ids(num_layers)


def build_product_state(num_layers: int, chi: int) -> MeraNetwork:
    """
    Build the network of the all-up product state exactly.

    Disentanglers are identities, every isometry maps |000> to its first output
    vector with the remaining rows completed by Gram-Schmidt over the standard
    basis, and the top tensor has unit weight on its first entry.

    Args:
        num_layers (int): Number of layers M
        chi (int): Bond cap

    Returns:
        MeraNetwork: Network representing |0...0>
    """
    dims, ids = _empty(num_layers, chi)
    tensors = {}
    for tid in ids:
        if tid.kind is TensorKind.TOP:
            d = dims[num_layers - 1]
            top = np.zeros((d, d, d), dtype=complex)
            top[0, 0, 0] = 1.0
            tensors[tid] = ComplexTensor(top)
        elif tid.kind is TensorKind.DISENTANGLER:
            d = dims[tid.layer - 1]
            tensors[tid] = ComplexTensor(np.eye(d * d).reshape(d, d, d, d))
        else:
            d, up = dims[tid.layer - 1], dims[tid.layer]
            first = np.zeros((1, d ** 3), dtype=complex)
            first[0, 0] = 1.0
            rows = orthonormal_completion(first, up)
            tensors[tid] = ComplexTensor(rows.reshape(up, d, d, d))
    network = MeraNetwork(num_layers, chi, tensors)
    logger.info(f"Built product-state network with {network.num_qubits} qubits, chi={chi}")
    return network


def build_random(num_layers: int, chi: int, seed: SeedLike = None) -> MeraNetwork:
    """
    Build a network whose tensors are Haar-random isometries.

    Args:
        num_layers (int): Number of layers M
        chi (int): Bond cap
        seed: Generator or seed; tensors are drawn bottom-up in ``tensor_ids`` order

    Returns:
        MeraNetwork: Random constraint-satisfying network
    """
    dims, ids = _empty(num_layers, chi)
    rng = as_generator(seed)
    tensors = {}
    for tid in ids:
        if tid.kind is TensorKind.TOP:
            d = dims[num_layers - 1]
            tensors[tid] = ComplexTensor(haar_isometry(1, d ** 3, rng).array.reshape(d, d, d))
        elif tid.kind is TensorKind.DISENTANGLER:
            d = dims[tid.layer - 1]
            tensors[tid] = ComplexTensor(haar_isometry(d * d, d * d, rng).array.reshape(d, d, d, d))
        else:
            d, up = dims[tid.layer - 1], dims[tid.layer]
            tensors[tid] = ComplexTensor(haar_isometry(up, d ** 3, rng).array.reshape(up, d, d, d))
    return MeraNetwork(num_layers, chi, tensors)


def absorb_single_qubit_gate(network: MeraNetwork, gate: np.ndarray, qubit: int) -> MeraNetwork:
    """
    Merge a single-qubit gate into the tensor that receives the qubit.

    Args:
        network (MeraNetwork): Input network
        gate (np.ndarray): 2x2 unitary, acting as out x in
        qubit (int): Target qubit

    Returns:
        MeraNetwork: Network representing (gate on qubit)|psi>

    Raises:
        NonUnitaryGateError: If ``gate`` is not unitary to 1e-12
    """
    g = np.asarray(gate, dtype=complex)
    if g.shape != (2, 2):
        raise ShapeMismatchError(f"Single-qubit gate must be 2x2, got {g.shape}")
    deviation = unitarity_deviation(g)
    if deviation > GATE_TOLERANCE:
        raise NonUnitaryGateError(f"Single-qubit gate deviates from unitarity by {deviation:.3e}")
    if not 0 <= qubit < network.num_qubits:
        raise InvalidQubitError(f"Qubit {qubit} out of range for {network.num_qubits} qubits")
    tid, axis = site_tensor(network.num_layers, qubit)
    # gate input contracts with the qubit axis; the result lands last and moves back
    merged = contract(network.tensors[tid], ComplexTensor(g), [(axis, 1)])
    updated = move_axes(merged, [merged.ndim - 1], [axis])
    logger.debug(f"Absorbed single-qubit gate on qubit {qubit} into {tid}")
    return network.with_tensors({tid: updated})


def cone_cost_reference(network: MeraNetwork) -> int:
    """Nominal scalar-operation count of one causal-cone contraction, chi^8 * M."""
    return network.chi ** 8 * network.num_layers
