"""
Simulation runner module.

This module executes the MERA protocol for one configuration: prepare the
initial state, generate the checkerboard circuit, absorb every gate in order
and accumulate the fidelity surrogate.
"""

import logging
import os
import time
from contextlib import contextmanager
from typing import Iterator, List, Optional, Tuple

import numpy as np

from src.circuit import checkerboard_circuit, save_circuit
from src.errors import DegenerateRetractionError, NonFiniteGradientError, NonFiniteObjectiveError
from src.gate_update import apply_gate, initialize_optimized
from src.gate_update.updater import trace_logger
from src.mera import (
    MeraNetwork, build_product_state, build_random, cone_cost_reference, reduced_density_matrix,
    save_network, von_neumann_entropy
)
from src.oracle import DenseState, exact_fidelity, run_dense
from src.simulation.models import GateRecord, RunConfig, SimulationRecord
from src.stiefel import Preconditioner

logger = logging.getLogger(__name__)

# Optimizer failures that end a run with a partial record
ABORTING_ERRORS = (NonFiniteGradientError, NonFiniteObjectiveError, DegenerateRetractionError)


@contextmanager
def trace_to_file(path: Optional[str]) -> Iterator[None]:
    """
    Stream optimizer trace records to a file while the block runs.

    Args:
        path (str, optional): Trace file; nothing is attached when None
    """
    if not path:
        yield
        return
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    handler = logging.FileHandler(path)
    handler.setFormatter(logging.Formatter("%(message)s"))
    previous_level, previous_propagate = trace_logger.level, trace_logger.propagate
    trace_logger.addHandler(handler)
    trace_logger.setLevel(logging.DEBUG)
    trace_logger.propagate = False
    try:
        yield
    finally:
        trace_logger.removeHandler(handler)
        trace_logger.setLevel(previous_level)
        trace_logger.propagate = previous_propagate
        handler.close()


def surrogate_summary(fidelities: List[float]) -> Tuple[float, float, float]:
    """
    Accumulate per-gate fidelities.

    Args:
        fidelities (List[float]): Per-gate fidelities in circuit order

    Returns:
        Tuple[float, float, float]: Product F, per-gate average F^(1/G) and error rate 1 - F^(1/G);
        (1, 1, 0) when there are no gates
    """
    product = 1.0
    for fidelity in fidelities:
        product *= fidelity
    if not fidelities:
        return product, 1.0, 0.0
    average = product ** (1.0 / len(fidelities))
    return product, average, 1.0 - average


def _random_start(cfg: RunConfig) -> MeraNetwork:
    return build_random(cfg.num_layers, cfg.chi, np.random.SeedSequence(cfg.seed).spawn(1)[0])


def prepare_initial_state(
    cfg: RunConfig, preconditioner: Optional[Preconditioner] = None
) -> Tuple[MeraNetwork, Optional[float]]:
    """
    Build the all-up initial network.

    Args:
        cfg (RunConfig): Run configuration
        preconditioner (Preconditioner, optional): Gradient transform for the optimized mode

    Returns:
        Tuple[MeraNetwork, Optional[float]]: Network and, in optimized mode, the reached objective
    """
    if cfg.init_mode == "analytic":
        return build_product_state(cfg.num_layers, cfg.chi), None
    start = _random_start(cfg)
    result = initialize_optimized(start, cfg.initialization_options(), preconditioner)
    return result.network, result.objective


def run_simulation(cfg: RunConfig, preconditioner: Optional[Preconditioner] = None) -> SimulationRecord:
    """
    Run the MERA protocol for one configuration.

    Non-finite objectives or gradients, and retractions that stay degenerate
    after step halving, stop the run and yield a record with status
    "aborted" that covers the gates applied so far.

    Args:
        cfg (RunConfig): Run configuration
        preconditioner (Preconditioner, optional): Gradient transform for ADAM

    Returns:
        SimulationRecord: Per-gate results and the fidelity surrogate
    """
    started = time.perf_counter()
    logger.info(f"Starting run: n={cfg.qubits}, chi={cfg.chi}, k={cfg.layers}, seed={cfg.seed}, init={cfg.init_mode}")

    status, error = "completed", None
    try:
        network, init_objective = prepare_initial_state(cfg, preconditioner)
    except ABORTING_ERRORS as e:
        logger.error(f"Aborting run during initialization: {e}")
        status, error = "aborted", f"Initialization: {e}"
        network, init_objective = _random_start(cfg), None
    circuit = checkerboard_circuit(cfg.qubits, cfg.layers, cfg.seed)
    if cfg.circuit_path:
        save_circuit(circuit, cfg.circuit_path)

    options = cfg.gate_update_options()
    records: List[GateRecord] = []
    pending = circuit.gates if status == "completed" else []
    with trace_to_file(cfg.trace_path):
        for index, gate in enumerate(pending):
            gate_started = time.perf_counter()
            try:
                result = apply_gate(network, gate.matrix, gate.pair, options, preconditioner, gate_index=index)
            except ABORTING_ERRORS as e:
                logger.error(f"Aborting run at gate {index} on {gate.pair}: {e}")
                status, error = "aborted", f"Gate {index} on {gate.pair}: {e}"
                break
            network = result.network
            records.append(
                GateRecord(
                    index=index,
                    pair=gate.pair,
                    fidelity=result.fidelity,
                    iterations=result.iterations,
                    wall_time=time.perf_counter() - gate_started,
                )
            )
            logger.info(
                f"Gate {index + 1}/{circuit.gate_count} on {gate.pair}: fidelity {result.fidelity:.10f} "
                f"after {result.iterations} iterations"
            )

    product, average, error_rate = surrogate_summary([r.fidelity for r in records])

    exact, gap = None, None
    if cfg.oracle_check and status == "completed":
        reference = run_dense(circuit, DenseState.zero_state(cfg.qubits, cfg.oracle_cap))
        exact = exact_fidelity(reference, network)
        gap = exact - product
        logger.info(f"Exact fidelity {exact:.10f} against surrogate {product:.10f}")

    if cfg.network_path:
        save_network(network, cfg.network_path)

    record = SimulationRecord(
        config=cfg,
        status=status,
        error=error,
        gates=records,
        circuit_fidelity=product,
        gate_count=len(records),
        nominal_gate_count=circuit.nominal_gate_count,
        average_gate_fidelity=average,
        error_rate=error_rate,
        exact_fidelity=exact,
        surrogate_gap=gap,
        initialization_objective=init_objective,
        max_constraint_deviation=network.max_constraint_deviation(),
        final_qubit_entropies=_qubit_entropies(network),
        cost_reference=cone_cost_reference(network),
        wall_time=time.perf_counter() - started,
        metadata={
            "planned_gate_count": circuit.gate_count,
            "gate_count_note": "average_gate_fidelity uses the applied gate count G = k(n-1), not n*k",
            "wire_dims": list(network.wire_dims),
        },
    )
    logger.info(
        f"Run {status}: F={product:.10f}, f={average:.10f}, eps={error_rate:.3e} over {len(records)} gates"
    )
    return record


def _qubit_entropies(network: MeraNetwork) -> List[float]:
    return [von_neumann_entropy(reduced_density_matrix(network, (q,))) for q in range(network.num_qubits)]
