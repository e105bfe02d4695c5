"""
Module initialization file.

This file initializes the mera module.
"""

# Import submodules
from src.mera.topology import TensorId, TensorKind, site_tensor, tensor_ids
from src.mera.network import (
    MeraNetwork, absorb_single_qubit_gate, build_product_state, build_random,
    cone_cost_reference, wire_dimension
)
from src.mera.contraction import (
    CausalCone, causal_cone, cone_nodes, reduced_density_matrix, to_statevector, von_neumann_entropy
)
from src.mera.serialization import load_network, network_from_dict, network_to_dict, save_network

__all__ = [
    'TensorId', 'TensorKind', 'site_tensor', 'tensor_ids',
    'MeraNetwork', 'absorb_single_qubit_gate', 'build_product_state', 'build_random',
    'cone_cost_reference', 'wire_dimension',
    'CausalCone', 'causal_cone', 'cone_nodes', 'reduced_density_matrix', 'to_statevector',
    'von_neumann_entropy',
    'load_network', 'network_from_dict', 'network_to_dict', 'save_network'
]
