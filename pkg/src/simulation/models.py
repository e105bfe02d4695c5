"""
Simulation models module.

This module defines the data models used by the simulation driver.
"""

from typing import Any, Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, Field, field_validator, model_validator

from src.gate_update import GateUpdateOptions
from src.oracle import DEFAULT_ORACLE_CAP
from src.simulation.env_config import EnvConfig
from src.stiefel import OptimizerConfig


def layers_for_qubits(qubits: int) -> Optional[int]:
    """Return M with 3^M == qubits, or None if qubits is not a power of 3."""
    m, size = 0, 1
    while size < qubits:
        size *= 3
        m += 1
    return m if size == qubits and m >= 1 else None


class RunConfig(BaseModel):
    """Configuration of one simulation run."""

    qubits: int = Field(9, description="Number of qubits, a power of 3")
    chi: int = Field(8, ge=2, description="Bond dimension cap")
    layers: int = Field(1, ge=0, description="Number of checkerboard layers k")
    seed: int = Field(0, ge=0, description="Seed of the circuit and of the random initial network")
    optimizer: OptimizerConfig = Field(default_factory=OptimizerConfig, description="ADAM hyperparameters")
    max_iterations: int = Field(500, ge=1, description="Iteration budget per gate")
    convergence_threshold: float = Field(1e-9, ge=0.0, description="Early-exit threshold on the objective")
    patience: int = Field(50, ge=1, description="Iterations without improvement before a gate update stops")
    update_mode: Literal["adam", "linearized"] = Field("adam", description="Gate update algorithm")
    init_mode: Literal["analytic", "optimized"] = Field("analytic", description="Initial state preparation")
    init_iterations: int = Field(2000, ge=1, description="Iteration budget of the optimized initialization")
    oracle_check: bool = Field(False, description="Compare against the dense state-vector simulator")
    oracle_cap: int = Field(
        DEFAULT_ORACLE_CAP, ge=1, le=DEFAULT_ORACLE_CAP, description="Largest qubit count of the dense simulator"
    )
    deterministic: bool = Field(True, description="Single-threaded linear algebra in sweep workers")
    output_path: Optional[str] = Field(None, description="Base path of the result files")
    output_format: Literal["json", "csv", "both"] = Field("json", description="Result file format")
    trace_path: Optional[str] = Field(None, description="File receiving per-iteration optimizer records")
    network_path: Optional[str] = Field(None, description="File receiving the final network")
    circuit_path: Optional[str] = Field(None, description="File receiving the generated circuit")

    @field_validator("qubits")
    @classmethod
    def qubits_power_of_three(cls, value: int) -> int:
        if layers_for_qubits(value) is None:
            raise ValueError(f"qubits must be 3^M for an integer M >= 1, got {value}")
        return value

    @model_validator(mode="after")
    def oracle_within_cap(self) -> "RunConfig":
        if self.oracle_check and self.qubits > self.oracle_cap:
            raise ValueError(f"oracle_check requires qubits <= {self.oracle_cap}, got {self.qubits}")
        return self

    @property
    def num_layers(self) -> int:
        return layers_for_qubits(self.qubits)

    def gate_update_options(self) -> GateUpdateOptions:
        return GateUpdateOptions(
            max_iterations=self.max_iterations,
            optimizer=self.optimizer,
            convergence_threshold=self.convergence_threshold,
            patience=self.patience,
            update_mode=self.update_mode,
        )

    def initialization_options(self) -> GateUpdateOptions:
        return GateUpdateOptions(
            max_iterations=self.init_iterations,
            optimizer=self.optimizer,
            convergence_threshold=self.convergence_threshold,
            patience=self.patience,
        )

    @classmethod
    def from_env(cls, env_config: EnvConfig, **overrides: Any) -> "RunConfig":
        """
        Build a configuration from environment defaults and explicit overrides.

        Args:
            env_config (EnvConfig): Environment configuration
            **overrides: Field values that take precedence; None values are ignored

        Returns:
            RunConfig: Validated configuration
        """
        optimizer = env_config.get_optimizer_config()
        values: Dict[str, Any] = {
            "optimizer": OptimizerConfig(
                learning_rate=optimizer["learning_rate"],
                beta1=optimizer["beta1"],
                beta2=optimizer["beta2"],
                epsilon=optimizer["epsilon"],
            ),
            "max_iterations": optimizer["max_iterations"],
            "convergence_threshold": optimizer["convergence_threshold"],
            "patience": optimizer["patience"],
            "oracle_cap": env_config.oracle_cap,
        }
        values.update({key: value for key, value in overrides.items() if value is not None})
        return cls(**values)


class GateRecord(BaseModel):
    """Per-gate result."""

    index: int = Field(..., description="Position of the gate in the circuit")
    pair: Tuple[int, int] = Field(..., description="Target qubits")
    fidelity: float = Field(..., description="Achieved |<psi'|U|psi>|^2")
    iterations: int = Field(..., description="Optimizer iterations used")
    wall_time: float = Field(..., description="Seconds spent on the gate")


class SimulationRecord(BaseModel):
    """Result of one simulation run."""

    config: RunConfig = Field(..., description="Configuration echo")
    status: Literal["completed", "aborted"] = Field(..., description="Run status")
    error: Optional[str] = Field(None, description="Reason of an aborted run")
    gates: List[GateRecord] = Field(default_factory=list, description="Per-gate results in circuit order")
    circuit_fidelity: float = Field(..., description="Product of the per-gate fidelities")
    gate_count: int = Field(..., description="Number of gates applied, the exponent base G")
    nominal_gate_count: int = Field(..., description="The n * k count, reported for comparison")
    average_gate_fidelity: float = Field(..., description="circuit_fidelity ** (1 / gate_count)")
    error_rate: float = Field(..., description="1 - average_gate_fidelity")
    exact_fidelity: Optional[float] = Field(None, description="|<psi_exact|psi_MERA>|^2 when checked")
    surrogate_gap: Optional[float] = Field(None, description="exact_fidelity - circuit_fidelity")
    initialization_objective: Optional[float] = Field(None, description="Objective of the optimized initialization")
    max_constraint_deviation: float = Field(..., description="Largest constraint deviation of the final network")
    final_qubit_entropies: List[float] = Field(default_factory=list, description="Single-qubit entropies in bits")
    cost_reference: int = Field(..., description="Nominal chi^8 * M cost of one cone contraction")
    wall_time: float = Field(..., description="Seconds for the whole run")
    metadata: Dict[str, Any] = Field(default_factory=dict, description="Additional information")


class SweepCellStatus(BaseModel):
    """Status of one sweep cell."""

    cell_id: str = Field(..., description="Cell ID")
    chi: int = Field(..., description="Bond dimension cap")
    layers: int = Field(..., description="Number of checkerboard layers")
    seed: int = Field(..., description="Seed")
    status: str = Field(..., description="Cell status")
    message: Optional[str] = Field(None, description="Additional information")
    record: Optional[SimulationRecord] = Field(None, description="Cell result")


class ErrorRecord(BaseModel):
    """Error record model."""

    error: str = Field(..., description="Error message")
    error_type: str = Field(..., description="Exception class name")
    details: Optional[Dict[str, Any]] = Field(None, description="Error details")
