"""
Module initialization file.

This file initializes the tensor_core module.
"""

# Import submodules
from src.tensor_core.tensor import (
    DTYPE, ComplexTensor, MatrixView, NetworkNode,
    contract, contract_network, move_axes, permute_reshape
)
from src.tensor_core.linalg import (
    SeedLike, as_generator, haar_isometry, isometry_deviation, isometry_from_gaussian,
    orthonormal_completion, polar_isometry, unitarity_deviation
)

__all__ = [
    'DTYPE', 'ComplexTensor', 'MatrixView', 'NetworkNode',
    'contract', 'contract_network', 'move_axes', 'permute_reshape',
    'SeedLike', 'as_generator', 'haar_isometry', 'isometry_deviation', 'isometry_from_gaussian',
    'orthonormal_completion', 'polar_isometry', 'unitarity_deviation'
]
