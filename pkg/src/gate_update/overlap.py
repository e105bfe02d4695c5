"""
Overlap network module.

This module builds the cone-restricted network of <psi'|O|psi> for a one- or
two-qubit operator O and evaluates it together with the environments of the
trainable bra tensors.
"""

import logging
from dataclasses import dataclass
from types import MappingProxyType
from typing import Dict, List, Mapping, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from src.errors import ConeMembershipError, NonFiniteObjectiveError, ShapeMismatchError
from src.mera import CausalCone, MeraNetwork, TensorId, causal_cone, cone_nodes
from src.mera.contraction import BRA, KET
from src.mera.topology import top_id
from src.tensor_core import ComplexTensor, NetworkNode, contract_network

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class OverlapNetwork:
    """
    The network of <psi'|O|psi> reduced to the causal cone of O's qubits.

    The bra state psi' must agree with the ket outside the cone; only the cone
    members of the bra are stored.

    Args:
        cone (CausalCone): Cone of the operator's qubits
        ket (MeraNetwork): Frozen ket network
        bra_tensors (Mapping[TensorId, ComplexTensor]): Trainable bra copies of the cone members
        operator (ComplexTensor): Operator with axes (out sites..., in sites...), each of length 2
    """

    cone: CausalCone
    ket: MeraNetwork
    bra_tensors: Mapping[TensorId, ComplexTensor]
    operator: ComplexTensor

    def __post_init__(self):
        if set(self.bra_tensors) != set(self.cone.members):
            raise ShapeMismatchError("Bra tensors must be exactly the cone members")
        for tid, tensor in self.bra_tensors.items():
            if tensor.shape != self.ket.tensors[tid].shape:
                raise ShapeMismatchError(
                    f"Bra tensor {tid} has shape {tensor.shape}, ket has {self.ket.tensors[tid].shape}"
                )
        expected = (2,) * (2 * len(self.cone.sites))
        if self.operator.shape != expected:
            raise ShapeMismatchError(f"Operator has shape {self.operator.shape}, expected {expected}")
        object.__setattr__(self, "bra_tensors", MappingProxyType(dict(self.bra_tensors)))

    @classmethod
    def for_operator(
        cls,
        network: MeraNetwork,
        matrix: np.ndarray,
        sites: Sequence[int],
        bra: Optional[MeraNetwork] = None,
    ) -> "OverlapNetwork":
        """
        Build an overlap network for an operator matrix.

        Args:
            network (MeraNetwork): Ket network
            matrix (np.ndarray): 2^k x 2^k operator, first site most significant
            sites (Sequence[int]): The k qubits the operator acts on
            bra (MeraNetwork, optional): Bra network; the ket itself if omitted

        Returns:
            OverlapNetwork: Network ready for evaluation
        """
        cone = causal_cone(network, sites)
        k = len(cone.sites)
        mat = np.asarray(matrix, dtype=complex)
        if mat.shape != (2 ** k, 2 ** k):
            raise ShapeMismatchError(f"Operator on {k} qubits must be {2 ** k}x{2 ** k}, got {mat.shape}")
        source = network if bra is None else bra
        return cls(
            cone=cone,
            ket=network,
            bra_tensors={tid: source.tensors[tid] for tid in cone.members},
            operator=ComplexTensor(mat.reshape((2,) * (2 * k))),
        )

    @classmethod
    def for_gate(
        cls, network: MeraNetwork, gate: np.ndarray, pair: Tuple[int, int], bra: Optional[MeraNetwork] = None
    ) -> "OverlapNetwork":
        """Overlap network of a 4x4 gate on a qubit pair, bra initialized from the ket."""
        return cls.for_operator(network, gate, pair, bra)

    def with_bra(self, updates: Mapping[TensorId, ComplexTensor]) -> "OverlapNetwork":
        merged = dict(self.bra_tensors)
        merged.update(updates)
        return OverlapNetwork(self.cone, self.ket, merged, self.operator)

    def bra_network(self) -> MeraNetwork:
        """The full bra network: the ket with the cone members replaced."""
        return self.ket.with_tensors(self.bra_tensors)

    def operator_node(self) -> NetworkNode:
        sites = self.cone.sites
        labels = tuple(self.cone.site_label(q, BRA) for q in sites) + tuple(
            self.cone.site_label(q, KET) for q in sites
        )
        return NetworkNode("operator", self.operator, labels)

    def nodes(self, hole: Optional[TensorId] = None) -> List[NetworkNode]:
        """All nodes in contraction order, leaving out the bra node of ``hole`` if given."""
        nodes = cone_nodes(self.cone, self.ket.tensors, self.bra_tensors) + [self.operator_node()]
        if hole is None:
            return nodes
        return [node for node in nodes if node.name != f"{BRA}:{hole.key}"]


class FidelityEvaluation(NamedTuple):
    """Objective |c|^2, the overlap c and the ascent directions of every bra member."""

    fidelity: float
    overlap: complex
    gradients: Dict[TensorId, np.ndarray]


def overlap(net: OverlapNetwork) -> complex:
    """
    Evaluate <psi'|O|psi> by contracting the cone network.

    Args:
        net (OverlapNetwork): Overlap network

    Returns:
        complex: The overlap
    """
    return complex(contract_network(net.nodes()).array.item())


def environment(net: OverlapNetwork, tid: TensorId) -> ComplexTensor:
    """
    Contract the overlap network with the bra copy of one tensor removed.

    The result E satisfies overlap = sum(conj(B) * E) for the bra tensor B, so E is
    the derivative of the overlap with respect to conj(B).

    Args:
        net (OverlapNetwork): Overlap network
        tid (TensorId): Cone member

    Returns:
        ComplexTensor: Environment with the bra tensor's shape

    Raises:
        ConeMembershipError: If ``tid`` is not in the cone
    """
    if tid not in net.cone.members:
        raise ConeMembershipError(f"Tensor {tid} is not a member of the causal cone of {net.cone.sites}")
    return contract_network(net.nodes(hole=tid), net.cone.labels(tid, BRA))


def cone_environments(net: OverlapNetwork) -> Tuple[complex, Dict[TensorId, ComplexTensor]]:
    """
    Environments of every bra member and the overlap they imply.

    Args:
        net (OverlapNetwork): Overlap network

    Returns:
        Tuple[complex, Dict[TensorId, ComplexTensor]]: Overlap and environments in cone order
    """
    environments = {tid: environment(net, tid) for tid in net.cone.order()}
    top = top_id(net.cone.num_layers)
    value = complex(np.vdot(net.bra_tensors[top].array, environments[top].array))
    return value, environments


def _gradient_matrix(net: OverlapNetwork, tid: TensorId, env: ComplexTensor, value: complex) -> np.ndarray:
    return net.ket.matrix_view(tid, env.scale(np.conj(value))).matrix()


def fidelity_gradient(net: OverlapNetwork, tid: TensorId, value: Optional[complex] = None) -> np.ndarray:
    """
    Ascent direction of |overlap|^2 with respect to one bra tensor.

    Args:
        net (OverlapNetwork): Overlap network
        tid (TensorId): Cone member
        value (complex, optional): Precomputed overlap

    Returns:
        np.ndarray: conj(overlap) * E in the tensor's constraint-matrix layout
    """
    env = environment(net, tid)
    if value is None:
        value = complex(np.vdot(net.bra_tensors[tid].array, env.array))
    return _gradient_matrix(net, tid, env, value)


def fidelity_and_gradients(net: OverlapNetwork) -> FidelityEvaluation:
    """
    Evaluate |overlap|^2 and the ascent directions of all bra members at once.

    Args:
        net (OverlapNetwork): Overlap network

    Returns:
        FidelityEvaluation: Objective, overlap and gradients

    Raises:
        NonFiniteObjectiveError: If the overlap is not finite
    """
    value, environments = cone_environments(net)
    if not np.isfinite(value):
        raise NonFiniteObjectiveError(f"Overlap evaluated to {value}")
    gradients = {tid: _gradient_matrix(net, tid, env, value) for tid, env in environments.items()}
    return FidelityEvaluation(abs(value) ** 2, value, gradients)
