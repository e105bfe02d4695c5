"""
Causal cone contraction module.

This module computes causal cones by upward propagation from marked qubit
wires, labels the reduced ket/bra network of a cone and contracts it into
reduced density matrices and full state vectors.

Wire labels are tuples. A wire that stays open on both sides of a ket/bra
network carries a side tag ("k" or "b"); a wire outside the marked set is
traced, so its ket and bra copies share the tag "t" and cancel.
"""

import logging
from dataclasses import dataclass
from typing import FrozenSet, Hashable, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from src.errors import InvalidQubitError, ShapeMismatchError, StateCapError
from src.mera.network import MeraNetwork
from src.mera.topology import (
    TensorId, TensorKind, disentangler_at, disentangler_count, isometry_count, top_id, wires_at_level
)
from src.tensor_core import ComplexTensor, NetworkNode, contract_network

logger = logging.getLogger(__name__)

KET = "k"
BRA = "b"
TRACED = "t"

DEFAULT_STATEVECTOR_CAP = 12
MAX_RDM_QUBITS = 2


@dataclass(frozen=True)
class CausalCone:
    """
    The tensors that influence the reduced state of a set of qubits.

    Args:
        num_layers (int): Number of layers of the network
        sites (Tuple[int, ...]): Marked qubits in caller order
        members (FrozenSet[TensorId]): Tensors that survive the orthogonality cancellations
        open_wires (Tuple[FrozenSet[int], ...]): Marked wire positions per level 0..M-1
    """

    num_layers: int
    sites: Tuple[int, ...]
    members: FrozenSet[TensorId]
    open_wires: Tuple[FrozenSet[int], ...]

    @property
    def pair(self) -> Tuple[int, ...]:
        return self.sites

    def __contains__(self, tid: object) -> bool:
        return tid in self.members

    def members_at(self, layer: int) -> List[TensorId]:
        return sorted(t for t in self.members if t.layer == layer)

    def order(self) -> List[TensorId]:
        """Members top-down: the top, then per layer the isometries followed by the disentanglers."""
        ordered = [top_id(self.num_layers)]
        for layer in range(self.num_layers - 1, 0, -1):
            at_layer = self.members_at(layer)
            ordered.extend(t for t in at_layer if t.kind is TensorKind.ISOMETRY)
            ordered.extend(t for t in at_layer if t.kind is TensorKind.DISENTANGLER)
        return ordered

    def wire_label(self, level: int, position: int, side: str) -> Hashable:
        tag = side if position in self.open_wires[level] else TRACED
        return ("w", level, position, tag)

    def site_label(self, qubit: int, side: str) -> Hashable:
        return ("w", 0, qubit, side)

    def mid_label(self, layer: int, wire: int, side: str) -> Hashable:
        """Label of a wire between the disentanglers and isometries of a layer."""
        position, _ = disentangler_at(wire, wires_at_level(self.num_layers, layer - 1))
        if position >= 0 and TensorId(layer, TensorKind.DISENTANGLER, position) in self.members:
            return ("m", layer, wire, side)
        return self.wire_label(layer - 1, wire, side)

    def labels(self, tid: TensorId, side: str) -> Tuple[Hashable, ...]:
        """Axis labels of a member tensor on one side of the network."""
        if tid.kind is TensorKind.TOP:
            return tuple(self.wire_label(self.num_layers - 1, i, side) for i in range(3))
        layer, p = tid.layer, tid.position
        if tid.kind is TensorKind.DISENTANGLER:
            a, b = 3 * p + 2, 3 * p + 3
            return (
                ("m", layer, a, side), ("m", layer, b, side),
                self.wire_label(layer - 1, a, side), self.wire_label(layer - 1, b, side),
            )
        return (self.wire_label(layer, p, side),) + tuple(
            self.mid_label(layer, 3 * p + i, side) for i in range(3)
        )


def _validate_sites(num_qubits: int, qubits: Sequence[int]) -> Tuple[int, ...]:
    sites = tuple(int(q) for q in qubits)
    if not sites:
        raise InvalidQubitError("At least one qubit is required")
    if len(set(sites)) != len(sites):
        raise InvalidQubitError(f"Repeated qubit in {sites}")
    for q in sites:
        if not 0 <= q < num_qubits:
            raise InvalidQubitError(f"Qubit {q} out of range for {num_qubits} qubits")
    return sites


def causal_cone(network: MeraNetwork, qubits: Sequence[int]) -> CausalCone:
    """
    Compute the causal cone of a set of qubits.

    A disentangler belongs to the cone when either lower wire is marked and marks
    both its upper wires; an isometry belongs when any of its three lower wires
    is marked and marks its upper wire. The top tensor always belongs.

    Args:
        network (MeraNetwork): Network whose topology is used
        qubits (Sequence[int]): Distinct qubits, typically a gate pair

    Returns:
        CausalCone: Members and open wires per level
    """
    num_layers = network.num_layers
    sites = _validate_sites(network.num_qubits, qubits)
    marked = frozenset(sites)
    open_wires = [marked]
    members = {top_id(num_layers)}
    for layer in range(1, num_layers):
        mid_marked = set(marked)
        for p in range(disentangler_count(num_layers, layer)):
            a, b = 3 * p + 2, 3 * p + 3
            if a in marked or b in marked:
                members.add(TensorId(layer, TensorKind.DISENTANGLER, p))
                mid_marked.update((a, b))
        upper = set()
        for j in range(isometry_count(num_layers, layer)):
            if mid_marked.intersection((3 * j, 3 * j + 1, 3 * j + 2)):
                members.add(TensorId(layer, TensorKind.ISOMETRY, j))
                upper.add(j)
        marked = frozenset(upper)
        open_wires.append(marked)
    return CausalCone(num_layers, sites, frozenset(members), tuple(open_wires))


def cone_nodes(
    cone: CausalCone,
    ket: Mapping[TensorId, ComplexTensor],
    bra: Optional[Mapping[TensorId, ComplexTensor]] = None,
) -> List[NetworkNode]:
    """
    Build the labeled nodes of a cone network in contraction order.

    Args:
        cone (CausalCone): Cone whose members are used
        ket (Mapping[TensorId, ComplexTensor]): Ket-side tensors
        bra (Mapping[TensorId, ComplexTensor], optional): Bra-side tensors, conjugated here;
            omitted for a ket-only network

    Returns:
        List[NetworkNode]: Ket node of each member, followed by its bra node if any
    """
    nodes = []
    for tid in cone.order():
        nodes.append(NetworkNode(f"{KET}:{tid.key}", ket[tid], cone.labels(tid, KET)))
        if bra is not None:
            nodes.append(NetworkNode(f"{BRA}:{tid.key}", bra[tid].conj(), cone.labels(tid, BRA)))
    return nodes


def reduced_density_matrix(network: MeraNetwork, qubits: Sequence[int]) -> ComplexTensor:
    """
    Reduced density matrix of one or two qubits from their causal cone.

    Args:
        network (MeraNetwork): Network
        qubits (Sequence[int]): One or two distinct qubits; the first is most significant

    Returns:
        ComplexTensor: Matrix rho[s, s'] of dimension 2^len(qubits)
    """
    if len(qubits) > MAX_RDM_QUBITS:
        raise InvalidQubitError(f"Reduced density matrices cover at most {MAX_RDM_QUBITS} qubits, got {len(qubits)}")
    cone = causal_cone(network, qubits)
    nodes = cone_nodes(cone, network.tensors, network.tensors)
    output = [cone.site_label(q, KET) for q in cone.sites] + [cone.site_label(q, BRA) for q in cone.sites]
    rho = contract_network(nodes, output)
    dim = 2 ** len(cone.sites)
    return ComplexTensor(rho.array.reshape(dim, dim))


def to_statevector(network: MeraNetwork, cap: int = DEFAULT_STATEVECTOR_CAP) -> ComplexTensor:
    """
    Contract the whole network into its amplitude vector.

    Args:
        network (MeraNetwork): Network
        cap (int): Largest qubit count accepted

    Returns:
        ComplexTensor: Vector of length 2^n, qubit 0 most significant

    Raises:
        StateCapError: If the network has more than ``cap`` qubits
    """
    n = network.num_qubits
    if n > cap:
        raise StateCapError(f"State vector of {n} qubits exceeds the cap of {cap}")
    cone = causal_cone(network, range(n))
    amplitudes = contract_network(cone_nodes(cone, network.tensors), [cone.site_label(q, KET) for q in range(n)])
    return ComplexTensor(amplitudes.array.reshape(2 ** n))


def von_neumann_entropy(rdm: ComplexTensor, floor: float = 1e-14) -> float:
    """
    Entanglement entropy in bits of a reduced density matrix.

    Args:
        rdm (ComplexTensor): Hermitian unit-trace matrix
        floor (float): Eigenvalues below this are treated as zero

    Returns:
        float: -sum(lambda * log2(lambda))
    """
    if rdm.ndim != 2 or rdm.shape[0] != rdm.shape[1]:
        raise ShapeMismatchError(f"Expected a square matrix, got shape {rdm.shape}")
    eigenvalues = np.linalg.eigvalsh(0.5 * (rdm.array + rdm.array.conj().T))
    eigenvalues = eigenvalues[eigenvalues > floor]
    return float(-np.sum(eigenvalues * np.log2(eigenvalues)))
