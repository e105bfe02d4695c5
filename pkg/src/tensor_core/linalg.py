"""
Matrix factorization module.

This module provides the polar (closest-isometry) factorization, Haar-random
isometry sampling, and deterministic orthonormal completion.
"""

import logging
from typing import Optional, Union

import numpy as np

from src.errors import DegenerateMatrixError, ShapeMismatchError
from src.tensor_core.tensor import DTYPE, ComplexTensor, MatrixView

logger = logging.getLogger(__name__)

RANK_TOLERANCE = 1e-12

SeedLike = Union[None, int, np.random.Generator, np.random.SeedSequence]
MatrixLike = Union[MatrixView, ComplexTensor, np.ndarray]


def as_generator(seed: SeedLike) -> np.random.Generator:
    """Return ``seed`` itself if it is a Generator, else a fresh Generator seeded by it."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def as_matrix(m: MatrixLike) -> np.ndarray:
    if isinstance(m, MatrixView):
        return m.matrix()
    if isinstance(m, ComplexTensor):
        m = m.array
    mat = np.asarray(m, dtype=DTYPE)
    if mat.ndim != 2:
        raise ShapeMismatchError(f"Expected a matrix, got shape {mat.shape}")
    return mat


def isometry_deviation(matrix: np.ndarray) -> float:
    """Max-entry deviation of W W^dagger from the identity."""
    gram = matrix @ matrix.conj().T
    return float(np.max(np.abs(gram - np.eye(matrix.shape[0]))))


def unitarity_deviation(matrix: np.ndarray) -> float:
    """Max-entry deviation of U^dagger U from the identity for a square matrix."""
    mat = np.asarray(matrix, dtype=DTYPE)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ShapeMismatchError(f"Expected a square matrix, got shape {mat.shape}")
    return float(np.max(np.abs(mat.conj().T @ mat - np.eye(mat.shape[0]))))


def polar_isometry(m: MatrixLike, allow_degenerate: bool = False) -> ComplexTensor:
    """
    Closest row-orthonormal matrix to ``m``.

    The result W = U V^dagger from the thin SVD M = U S V^dagger maximizes
    Re tr(W^dagger M) over all W with W W^dagger = I.

    Args:
        m: Matrix with rows <= cols
        allow_degenerate (bool): Return a (non-unique) maximizer for rank-deficient input

    Returns:
        ComplexTensor: The isometry as a (rows, cols) matrix

    Raises:
        DegenerateMatrixError: If the smallest singular value is below 1e-12 of the largest
    """
    mat = as_matrix(m)
    rows, cols = mat.shape
    if rows > cols:
        raise ShapeMismatchError(f"Polar isometry needs rows <= cols, got {mat.shape}")
    u, s, vh = np.linalg.svd(mat, full_matrices=False)
    if not allow_degenerate and (s[0] == 0.0 or s[-1] <= RANK_TOLERANCE * s[0]):
        raise DegenerateMatrixError(
            f"Rank-deficient matrix: singular values span [{s[-1]:.3e}, {s[0]:.3e}]"
        )
    return ComplexTensor._from_owned(u @ vh)


def isometry_from_gaussian(z: np.ndarray) -> ComplexTensor:
    """
    Turn a (cols, rows) complex Gaussian matrix into a Haar row-isometry.

    Q from the QR factorization is multiplied column-wise by the phases of R's
    diagonal so that the factorization is unique and Q is Haar distributed.

    Args:
        z (np.ndarray): Complex matrix with at least as many rows as columns

    Returns:
        ComplexTensor: W = Q^T of shape (rows, cols)
    """
    q, r = np.linalg.qr(z)
    diag = np.diag(r)
    magnitude = np.abs(diag)
    phases = np.where(magnitude > 0, diag / np.where(magnitude > 0, magnitude, 1.0), 1.0)
    return ComplexTensor._from_owned((q * phases[np.newaxis, :]).T)


def haar_isometry(rows: int, cols: int, seed: SeedLike = None) -> ComplexTensor:
    """
    Sample a Haar-random row-isometry.

    Args:
        rows (int): Number of orthonormal rows
        cols (int): Row length, at least ``rows``
        seed: Generator or seed for the random stream

    Returns:
        ComplexTensor: W with W W^dagger = I
    """
    if rows < 1 or rows > cols:
        raise ShapeMismatchError(f"Haar isometry needs 1 <= rows <= cols, got {rows}x{cols}")
    rng = as_generator(seed)
    z = (rng.standard_normal((cols, rows)) + 1j * rng.standard_normal((cols, rows))) / np.sqrt(2.0)
    return isometry_from_gaussian(z)


def orthonormal_completion(seed_rows: np.ndarray, total_rows: int, tolerance: float = 1e-10) -> np.ndarray:
    """
    Extend orthonormal rows to ``total_rows`` by Gram-Schmidt over the standard basis.

    Args:
        seed_rows (np.ndarray): (k, q) matrix with orthonormal rows
        total_rows (int): Number of rows of the result
        tolerance (float): Norm below which a candidate basis vector is skipped

    Returns:
        np.ndarray: (total_rows, q) matrix whose first k rows are ``seed_rows``
    """
    seed = np.atleast_2d(np.asarray(seed_rows, dtype=DTYPE))
    cols = seed.shape[1]
    if total_rows > cols:
        raise ShapeMismatchError(f"Cannot fit {total_rows} orthonormal rows of length {cols}")
    basis = [row for row in seed]
    for j in range(cols):
        if len(basis) >= total_rows:
            break
        candidate = np.zeros(cols, dtype=DTYPE)
        candidate[j] = 1.0
        for row in basis:
            candidate -= np.vdot(row, candidate) * row
        norm = np.linalg.norm(candidate)
        if norm > tolerance:
            basis.append(candidate / norm)
    return np.array(basis[:total_rows])
