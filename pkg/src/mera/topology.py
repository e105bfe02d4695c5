"""
Ternary MERA topology module.

This module names the elementary tensors of a ternary network with open
boundaries and answers the geometric questions every other module asks: how
many wires a level has, which wires a tensor touches and which layer-1 tensor a
qubit enters.

Levels are numbered from the qubits upward: level 0 holds the n = 3^M qubit
wires and level l holds 3^(M - l) wires. Layer l (1 <= l <= M - 1) maps level
l - 1 to level l. Its disentangler p acts on the adjacent wires (3p + 2, 3p + 3),
its isometry j merges wires (3j, 3j + 1, 3j + 2) into upper wire j. The top
tensor sits at layer M on the three wires of level M - 1.

Tensor axes list upper (output) wires first:
    disentangler (mid_a, mid_b, low_a, low_b)
    isometry     (up, in_0, in_1, in_2)
    top          (in_0, in_1, in_2)
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import List, Tuple

from src.errors import InvalidQubitError, NetworkFormatError

logger = logging.getLogger(__name__)


class TensorKind(str, Enum):
    """Kind of elementary tensor."""

    DISENTANGLER = "dis"
    ISOMETRY = "iso"
    TOP = "top"


@dataclass(frozen=True, order=True)
class TensorId:
    """Address of one elementary tensor."""

    layer: int
    kind: TensorKind
    position: int

    @property
    def key(self) -> str:
        return f"{self.layer}:{self.kind.value}:{self.position}"

    @classmethod
    def parse(cls, key: str) -> "TensorId":
        """
        Parse a key produced by ``TensorId.key``.

        Args:
            key (str): String of the form ``layer:kind:position``

        Returns:
            TensorId: Parsed identifier
        """
        try:
            layer, kind, position = key.split(":")
            return cls(int(layer), TensorKind(kind), int(position))
        except ValueError as e:
            raise NetworkFormatError(f"Invalid tensor key {key!r}") from e

    def __str__(self) -> str:
        return self.key


def top_id(num_layers: int) -> TensorId:
    return TensorId(num_layers, TensorKind.TOP, 0)


def wires_at_level(num_layers: int, level: int) -> int:
    return 3 ** (num_layers - level)


def disentangler_count(num_layers: int, layer: int) -> int:
    return wires_at_level(num_layers, layer - 1) // 3 - 1


def isometry_count(num_layers: int, layer: int) -> int:
    return wires_at_level(num_layers, layer - 1) // 3


def tensor_ids(num_layers: int) -> List[TensorId]:
    """All tensor ids bottom-up: per layer the disentanglers, then the isometries, then the top."""
    ids = []
    for layer in range(1, num_layers):
        ids.extend(TensorId(layer, TensorKind.DISENTANGLER, p) for p in range(disentangler_count(num_layers, layer)))
        ids.extend(TensorId(layer, TensorKind.ISOMETRY, j) for j in range(isometry_count(num_layers, layer)))
    ids.append(top_id(num_layers))
    return ids


def disentangler_at(wire: int, wire_count: int) -> Tuple[int, int]:
    """
    Locate the disentangler acting on a wire below a layer.

    Args:
        wire (int): Wire position on the lower level
        wire_count (int): Number of wires on that level

    Returns:
        Tuple[int, int]: (disentangler position, axis offset 0 or 1), or (-1, -1) for an edge wire
    """
    if wire % 3 == 2 and wire < wire_count - 1:
        return wire // 3, 0
    if wire % 3 == 0 and wire > 0:
        return wire // 3 - 1, 1
    return -1, -1


def row_axes(kind: TensorKind) -> Tuple[int, ...]:
    """Axes forming the rows of the constraint matrix (upper wires)."""
    if kind is TensorKind.DISENTANGLER:
        return (0, 1)
    if kind is TensorKind.ISOMETRY:
        return (0,)
    return ()


def col_axes(kind: TensorKind) -> Tuple[int, ...]:
    if kind is TensorKind.DISENTANGLER:
        return (2, 3)
    return (1, 2, 3) if kind is TensorKind.ISOMETRY else (0, 1, 2)


def site_tensor(num_layers: int, qubit: int) -> Tuple[TensorId, int]:
    """
    Find the tensor whose input wire is a given qubit.

    Args:
        num_layers (int): Number of layers M
        qubit (int): Qubit index in 0..3^M - 1

    Returns:
        Tuple[TensorId, int]: Tensor id and the axis that carries the qubit
    """
    n = wires_at_level(num_layers, 0)
    if not 0 <= qubit < n:
        raise InvalidQubitError(f"Qubit {qubit} out of range for {n} qubits")
    if num_layers == 1:
        return top_id(1), qubit
    position, offset = disentangler_at(qubit, n)
    if position >= 0:
        return TensorId(1, TensorKind.DISENTANGLER, position), 2 + offset
    return TensorId(1, TensorKind.ISOMETRY, qubit // 3), 1 + qubit % 3
