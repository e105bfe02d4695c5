"""
Dense complex tensor module.

This module provides the immutable complex tensor type, the matrix view used by
factorizations, and the pairwise contraction primitives every network
computation in the simulator is built from. Tensor data is stored in row-major
(C) order throughout.
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, Hashable, List, NamedTuple, Sequence, Tuple

import numpy as np

from src.errors import ShapeMismatchError

logger = logging.getLogger(__name__)

DTYPE = np.complex128


class ComplexTensor:
    """Immutable dense tensor of complex double-precision scalars."""

    __slots__ = ("_array",)

    def __init__(self, array: Any):
        """
        Initialize a tensor from array-like data.

        Args:
            array: Nested sequence or numpy array; it is copied and frozen.

        Raises:
            ShapeMismatchError: If any axis has length zero.
        """
        data = np.array(array, dtype=DTYPE, copy=True)
        if any(length < 1 for length in data.shape):
            raise ShapeMismatchError(f"Axis lengths must be positive, got {data.shape}")
        data.setflags(write=False)
        self._array = data

    @classmethod
    def _from_owned(cls, array: np.ndarray) -> "ComplexTensor":
        # takes ownership of a freshly computed array without copying
        tensor = cls.__new__(cls)
        data = np.asarray(array, dtype=DTYPE, order="C")
        if any(length < 1 for length in data.shape):
            raise ShapeMismatchError(f"Axis lengths must be positive, got {data.shape}")
        data.setflags(write=False)
        tensor._array = data
        return tensor

    @property
    def array(self) -> np.ndarray:
        """Read-only numpy view of the tensor."""
        return self._array

    @property
    def shape(self) -> Tuple[int, ...]:
        return self._array.shape

    @property
    def ndim(self) -> int:
        return self._array.ndim

    @property
    def size(self) -> int:
        return int(self._array.size)

    @property
    def data(self) -> np.ndarray:
        """Flat row-major copy of the entries."""
        return self._array.ravel().copy()

    def conj(self) -> "ComplexTensor":
        return ComplexTensor._from_owned(np.conj(self._array))

    def scale(self, factor: complex) -> "ComplexTensor":
        return ComplexTensor._from_owned(self._array * factor)

    def norm(self) -> float:
        """Frobenius norm."""
        return float(np.linalg.norm(self._array.ravel()))

    def allclose(self, other: "ComplexTensor", atol: float = 1e-12) -> bool:
        return self.shape == other.shape and bool(np.allclose(self._array, other.array, rtol=0.0, atol=atol))

    def to_dict(self) -> Dict[str, Any]:
        """
        Serialize to the tensor record format.

        Returns:
            Dict[str, Any]: ``{"shape": [...], "data": [[re, im], ...]}`` in row-major order
        """
        flat = self._array.ravel()
        return {
            "shape": [int(n) for n in self.shape],
            "data": [[float(z.real), float(z.imag)] for z in flat],
        }

    @classmethod
    def from_dict(cls, record: Dict[str, Any]) -> "ComplexTensor":
        """
        Deserialize a tensor record.

        Args:
            record (Dict[str, Any]): Record produced by ``to_dict``

        Returns:
            ComplexTensor: Reconstructed tensor
        """
        try:
            shape = tuple(int(n) for n in record["shape"])
            pairs = np.asarray(record["data"], dtype=np.float64)
        except (KeyError, TypeError, ValueError) as e:
            raise ShapeMismatchError(f"Malformed tensor record: {e}") from e
        expected = int(np.prod(shape)) if shape else 1
        if pairs.shape != (expected, 2):
            raise ShapeMismatchError(
                f"Tensor record holds {pairs.shape[0] if pairs.ndim else 0} entries, shape {shape} needs {expected}"
            )
        values = pairs[:, 0] + 1j * pairs[:, 1]
        return cls._from_owned(values.reshape(shape))

    def __repr__(self) -> str:
        return f"ComplexTensor(shape={self.shape})"


@dataclass(frozen=True)
class MatrixView:
    """A tensor read as a matrix by grouping its axes into rows and columns."""

    tensor: ComplexTensor
    row_axes: Tuple[int, ...]
    col_axes: Tuple[int, ...]

    def __post_init__(self):
        axes = list(self.row_axes) + list(self.col_axes)
        if sorted(axes) != list(range(self.tensor.ndim)):
            raise ShapeMismatchError(
                f"Row axes {self.row_axes} and column axes {self.col_axes} must cover "
                f"each of the {self.tensor.ndim} axes exactly once"
            )

    @property
    def row_shape(self) -> Tuple[int, ...]:
        return tuple(self.tensor.shape[a] for a in self.row_axes)

    @property
    def col_shape(self) -> Tuple[int, ...]:
        return tuple(self.tensor.shape[a] for a in self.col_axes)

    def matrix(self) -> np.ndarray:
        rows = int(np.prod(self.row_shape)) if self.row_axes else 1
        cols = int(np.prod(self.col_shape)) if self.col_axes else 1
        perm = list(self.row_axes) + list(self.col_axes)
        return np.transpose(self.tensor.array, perm).reshape(rows, cols)

    def fold(self, matrix: Any) -> ComplexTensor:
        """
        Map a matrix with this view's layout back to the tensor's axis order.

        Args:
            matrix: Array of shape (rows, cols)

        Returns:
            ComplexTensor: Tensor with the original shape
        """
        mat = np.asarray(matrix, dtype=DTYPE)
        perm = list(self.row_axes) + list(self.col_axes)
        grouped = mat.reshape(self.row_shape + self.col_shape)
        return ComplexTensor(np.transpose(grouped, np.argsort(perm)))


def _check_axis(axis: int, ndim: int, which: str):
    if not 0 <= axis < ndim:
        raise ShapeMismatchError(f"Axis {axis} out of range for {which} with {ndim} axes")


def contract(a: ComplexTensor, b: ComplexTensor, pairs: Sequence[Tuple[int, int]]) -> ComplexTensor:
    """
    Contract two tensors over paired axes.

    Args:
        a (ComplexTensor): Left tensor
        b (ComplexTensor): Right tensor
        pairs (Sequence[Tuple[int, int]]): (axis of a, axis of b) pairs to sum over

    Returns:
        ComplexTensor: Unpaired axes of ``a`` followed by unpaired axes of ``b``

    Raises:
        ShapeMismatchError: On repeated axes or mismatched paired lengths
    """
    axes_a = [int(p[0]) for p in pairs]
    axes_b = [int(p[1]) for p in pairs]
    if len(set(axes_a)) != len(axes_a) or len(set(axes_b)) != len(axes_b):
        raise ShapeMismatchError(f"Repeated axis in contraction pairs {list(pairs)}")
    for axis_a, axis_b in zip(axes_a, axes_b):
        _check_axis(axis_a, a.ndim, "left tensor")
        _check_axis(axis_b, b.ndim, "right tensor")
        if a.shape[axis_a] != b.shape[axis_b]:
            raise ShapeMismatchError(
                f"Cannot pair axis {axis_a} (length {a.shape[axis_a]}) with axis {axis_b} (length {b.shape[axis_b]})"
            )
    result = np.tensordot(a.array, b.array, axes=(axes_a, axes_b))
    return ComplexTensor._from_owned(result)


def permute_reshape(t: ComplexTensor, perm: Sequence[int], new_shape: Sequence[int]) -> ComplexTensor:
    """
    Permute the axes of a tensor, then reshape it in row-major order.

    Args:
        t (ComplexTensor): Input tensor
        perm (Sequence[int]): Axis permutation
        new_shape (Sequence[int]): Target shape

    Returns:
        ComplexTensor: Reordered tensor
    """
    perm = [int(p) for p in perm]
    if sorted(perm) != list(range(t.ndim)):
        raise ShapeMismatchError(f"{perm} is not a permutation of {t.ndim} axes")
    new_shape = tuple(int(n) for n in new_shape)
    count = int(np.prod(new_shape)) if new_shape else 1
    if count != t.size or any(n < 1 for n in new_shape):
        raise ShapeMismatchError(f"Cannot reshape {t.size} elements into {new_shape}")
    return ComplexTensor._from_owned(np.transpose(t.array, perm).reshape(new_shape))


def move_axes(t: ComplexTensor, source: Sequence[int], destination: Sequence[int]) -> ComplexTensor:
    """Move axes to new positions, keeping the relative order of the others."""
    order = [axis for axis in range(t.ndim) if axis not in source]
    for dest, src in sorted(zip(destination, source)):
        order.insert(dest, src)
    return permute_reshape(t, order, [t.shape[axis] for axis in order])


class NetworkNode(NamedTuple):
    """One tensor of a labeled network; equal labels are joined edges."""

    name: str
    tensor: ComplexTensor
    labels: Tuple[Hashable, ...]


def contract_network(nodes: Sequence[NetworkNode], output_labels: Sequence[Hashable] = ()) -> ComplexTensor:
    """
    Contract a labeled tensor network pairwise in the caller's listed order.

    The first node seeds the accumulator; each step absorbs the first remaining
    node that shares a label with it (the first remaining node if none does).
    Every label must occur once (open) or twice (contracted).

    Args:
        nodes (Sequence[NetworkNode]): Tensors and their axis labels
        output_labels (Sequence[Hashable]): Open labels in the desired result order

    Returns:
        ComplexTensor: Contraction result with axes ordered as ``output_labels``
    """
    if not nodes:
        raise ShapeMismatchError("Cannot contract an empty network")
    counts: Dict[Hashable, int] = {}
    for node in nodes:
        if len(node.labels) != node.tensor.ndim:
            raise ShapeMismatchError(f"Node {node.name} has {node.tensor.ndim} axes but {len(node.labels)} labels")
        for label in node.labels:
            counts[label] = counts.get(label, 0) + 1
    open_labels = {label for label, count in counts.items() if count == 1}
    if any(count > 2 for count in counts.values()):
        raise ShapeMismatchError("A label occurs on more than two axes")
    if open_labels != set(output_labels) or len(output_labels) != len(open_labels):
        raise ShapeMismatchError(f"Open labels {sorted(map(str, open_labels))} do not match requested output")

    remaining: List[NetworkNode] = list(nodes[1:])
    acc = nodes[0].tensor
    acc_labels: List[Hashable] = list(nodes[0].labels)
    while remaining:
        present = set(acc_labels)
        pick = next((i for i, node in enumerate(remaining) if present.intersection(node.labels)), 0)
        node = remaining.pop(pick)
        shared = [label for label in node.labels if label in present]
        pairs = [(acc_labels.index(label), node.labels.index(label)) for label in shared]
        acc = contract(acc, node.tensor, pairs)
        acc_labels = [label for label in acc_labels if label not in shared] + [
            label for label in node.labels if label not in shared
        ]

    perm = [acc_labels.index(label) for label in output_labels]
    return permute_reshape(acc, perm, [acc.shape[p] for p in perm])
