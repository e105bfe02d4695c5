"""
Complex Stiefel manifold module.

This module provides points with orthonormal rows, the tangent projection under
the embedded Frobenius metric, the polar retraction and projection transport.
"""

import logging
from dataclasses import dataclass

import numpy as np

from src.errors import (
    ConstraintViolationError, DegenerateMatrixError, DegenerateRetractionError, ShapeMismatchError
)
from src.tensor_core import DTYPE, isometry_deviation, polar_isometry

logger = logging.getLogger(__name__)

POINT_TOLERANCE = 1e-10


@dataclass(frozen=True, eq=False)
class StiefelPoint:
    """A complex p x q matrix W with p <= q and W W^dagger = I_p."""

    matrix: np.ndarray

    def __post_init__(self):
        mat = np.array(self.matrix, dtype=DTYPE, copy=True)
        if mat.ndim != 2 or mat.shape[0] > mat.shape[1]:
            raise ShapeMismatchError(f"Stiefel point needs a p x q matrix with p <= q, got {mat.shape}")
        deviation = isometry_deviation(mat)
        if deviation > POINT_TOLERANCE:
            raise ConstraintViolationError(f"Matrix is not row-orthonormal (deviation {deviation:.3e})")
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)

    @property
    def shape(self):
        return self.matrix.shape


def _check_shape(point: StiefelPoint, g: np.ndarray):
    if g.shape != point.shape:
        raise ShapeMismatchError(f"Matrix of shape {g.shape} does not match point of shape {point.shape}")


def project_tangent(point: StiefelPoint, g: np.ndarray) -> np.ndarray:
    """
    Orthogonal projection onto the tangent space at ``point``.

    Args:
        point (StiefelPoint): Base point W
        g (np.ndarray): Ambient matrix G

    Returns:
        np.ndarray: G - (G W^dagger + W G^dagger) W / 2
    """
    g = np.asarray(g, dtype=DTYPE)
    _check_shape(point, g)
    w = point.matrix
    return g - 0.5 * (g @ w.conj().T + w @ g.conj().T) @ w


def retract(point: StiefelPoint, xi: np.ndarray, step: float) -> StiefelPoint:
    """
    Move along a tangent vector and map back onto the manifold.

    Args:
        point (StiefelPoint): Base point W
        xi (np.ndarray): Tangent vector at W
        step (float): Step length

    Returns:
        StiefelPoint: polar(W + step * xi); W itself for a zero step

    Raises:
        DegenerateRetractionError: If W + step * xi loses rank
    """
    xi = np.asarray(xi, dtype=DTYPE)
    _check_shape(point, xi)
    if step == 0.0 or not np.any(xi):
        return point
    try:
        moved = polar_isometry(point.matrix + step * xi)
    except DegenerateMatrixError as e:
        raise DegenerateRetractionError(f"Retraction with step {step:.3e} collapsed rank: {e}") from e
    return StiefelPoint(moved.array)


def transport(new_point: StiefelPoint, xi: np.ndarray) -> np.ndarray:
    """Carry a tangent vector to ``new_point`` by projecting it."""
    return project_tangent(new_point, xi)
