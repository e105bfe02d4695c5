"""
Gate update module.

This module absorbs a two-qubit gate into a MERA by maximizing
|<psi'|U|psi>|^2 over the bra tensors of the gate's causal cone, subject to
their isometry constraints.
"""

import json
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from src.errors import InvalidQubitError, NonFiniteObjectiveError, NonUnitaryGateError, ShapeMismatchError
from src.gate_update.options import GateUpdateOptions
from src.gate_update.overlap import OverlapNetwork, environment, fidelity_and_gradients, overlap
from src.mera import MeraNetwork, TensorId
from src.stiefel import AdamState, Preconditioner, StiefelPoint, adam_step
from src.tensor_core import ComplexTensor, polar_isometry, unitarity_deviation

logger = logging.getLogger(__name__)
trace_logger = logging.getLogger("src.gate_update.trace")

GATE_TOLERANCE = 1e-12
# ADAM gradients vanish with the overlap
OVERLAP_FLOOR = 1e-12


@dataclass
class GateUpdateResult:
    """
    Outcome of one gate update.

    Args:
        network (MeraNetwork): Updated network, identical to the input outside the cone
        fidelity (float): |<psi'|U|psi>|^2 at the returned tensors
        iterations (int): Optimizer iterations used
        initial_fidelity (float): Objective before optimization
        history (List[float]): Objective after every iteration
    """

    network: MeraNetwork
    fidelity: float
    iterations: int
    initial_fidelity: float
    history: List[float] = field(default_factory=list)


def validate_gate(gate: np.ndarray, pair: Tuple[int, int], num_qubits: int) -> Tuple[np.ndarray, Tuple[int, int]]:
    """
    Check a gate matrix and its target pair.

    Args:
        gate (np.ndarray): 4x4 matrix
        pair (Tuple[int, int]): Target qubits
        num_qubits (int): Number of qubits in the state

    Returns:
        Tuple[np.ndarray, Tuple[int, int]]: The matrix as complex array and the pair as ints

    Raises:
        NonUnitaryGateError: If the matrix is not unitary to 1e-12
        InvalidQubitError: If the pair is not (q, q + 1) inside the chain
    """
    matrix = np.asarray(gate, dtype=complex)
    if matrix.shape != (4, 4):
        raise ShapeMismatchError(f"Two-qubit gate must be 4x4, got {matrix.shape}")
    deviation = unitarity_deviation(matrix)
    if deviation > GATE_TOLERANCE:
        raise NonUnitaryGateError(f"Gate deviates from unitarity by {deviation:.3e}")
    q, r = (int(x) for x in pair)
    if r != q + 1:
        raise InvalidQubitError(f"Gate pair {pair} is not a nearest-neighbor pair (q, q+1)")
    if q < 0 or r >= num_qubits:
        raise InvalidQubitError(f"Gate pair {pair} out of range for {num_qubits} qubits")
    return matrix, (q, r)


def _trace(gate_index: Optional[int], iteration: int, objective: float, best: float):
    if trace_logger.isEnabledFor(logging.DEBUG):
        trace_logger.debug(json.dumps({"gate": gate_index, "iteration": iteration, "objective": objective, "best": best}))


def _fold(net: OverlapNetwork, points: Dict[TensorId, StiefelPoint]) -> Dict[TensorId, ComplexTensor]:
    return {tid: net.ket.from_stiefel_matrix(tid, point.matrix) for tid, point in points.items()}


def apply_gate(
    network: MeraNetwork,
    gate: np.ndarray,
    pair: Tuple[int, int],
    options: Optional[GateUpdateOptions] = None,
    preconditioner: Optional[Preconditioner] = None,
    gate_index: Optional[int] = None,
) -> GateUpdateResult:
    """
    Apply a two-qubit gate approximately by re-optimizing its causal cone.

    The bra starts as a copy of the ket, so the starting objective is
    |<psi|U|psi>|^2. While the overlap is below ``OVERLAP_FLOOR`` the ADAM
    mode takes a linearized polar sweep instead of a gradient step.
    Iteration stops at the budget, when the best objective reaches
    1 - threshold, or when it has not improved by more than the
    threshold for ``patience`` iterations.

    Args:
        network (MeraNetwork): State before the gate
        gate (np.ndarray): 4x4 unitary acting as (out_q, out_q+1) x (in_q, in_q+1)
        pair (Tuple[int, int]): Target pair (q, q + 1)
        options (GateUpdateOptions, optional): Optimization settings
        preconditioner (Preconditioner, optional): Gradient transform for ADAM
        gate_index (int, optional): Position of the gate in its circuit, for tracing

    Returns:
        GateUpdateResult: Updated network and achieved fidelity
    """
    options = options or GateUpdateOptions()
    matrix, pair = validate_gate(gate, pair, network.num_qubits)
    net = OverlapNetwork.for_gate(network, matrix, pair)
    threshold = options.convergence_threshold

    evaluation = fidelity_and_gradients(net)
    initial = evaluation.fidelity
    best_fidelity, best_bra = initial, dict(net.bra_tensors)
    history: List[float] = []
    iterations = 0

    if initial < 1.0 - threshold:
        points = {tid: StiefelPoint(network.stiefel_matrix(tid)) for tid in net.cone.order()}
        states = {tid: AdamState.fresh(point, options.optimizer) for tid, point in points.items()}
        last_improvement = 0
        for iterations in range(1, options.max_iterations + 1):
            if options.update_mode == "adam" and abs(evaluation.overlap) >= OVERLAP_FLOOR:
                for tid in points:
                    points[tid], states[tid] = adam_step(
                        points[tid], evaluation.gradients[tid], states[tid], preconditioner
                    )
                net = net.with_bra(_fold(net, points))
                evaluation = fidelity_and_gradients(net)
                fidelity = evaluation.fidelity
            elif options.update_mode == "adam":
                logger.debug(f"Gate {gate_index} on {pair}: overlap {abs(evaluation.overlap):.1e}, polar sweep")
                net = _linearized_sweep(net)
                points = {
                    tid: StiefelPoint(net.ket.matrix_view(tid, tensor).matrix()) for tid, tensor in net.bra_tensors.items()
                }
                states = {tid: AdamState.fresh(point, options.optimizer) for tid, point in points.items()}
                evaluation = fidelity_and_gradients(net)
                fidelity = evaluation.fidelity
            else:
                net = _linearized_sweep(net)
                fidelity = _checked_fidelity(net)
            history.append(fidelity)

            if fidelity > best_fidelity + threshold:
                last_improvement = iterations
            if fidelity > best_fidelity or not options.keep_best:
                best_fidelity, best_bra = fidelity, dict(net.bra_tensors)
            _trace(gate_index, iterations, fidelity, best_fidelity)

            if best_fidelity >= 1.0 - threshold or iterations - last_improvement >= options.patience:
                break

    updated = network.with_tensors(best_bra)
    logger.debug(
        f"Gate {gate_index} on {pair}: fidelity {initial:.12f} -> {best_fidelity:.12f} in {iterations} iterations"
    )
    return GateUpdateResult(updated, best_fidelity, iterations, initial, history)


def _checked_fidelity(net: OverlapNetwork) -> float:
    value = overlap(net)
    if not np.isfinite(value):
        raise NonFiniteObjectiveError(f"Overlap evaluated to {value}")
    return abs(value) ** 2


def _linearized_sweep(net: OverlapNetwork) -> OverlapNetwork:
    """Replace each bra member in turn by the polar factor of its environment."""
    for tid in net.cone.order():
        env = environment(net, tid)
        if not np.any(env.array):
            continue
        matrix = net.ket.matrix_view(tid, env).matrix()
        net = net.with_bra({tid: net.ket.from_stiefel_matrix(tid, polar_isometry(matrix, allow_degenerate=True).array)})
    return net
