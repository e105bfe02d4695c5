"""
Gate update options module.

This module defines the validated settings shared by gate updates and the
optimized initialization.
"""

from typing import Literal

from pydantic import BaseModel, Field

from src.stiefel import OptimizerConfig


class GateUpdateOptions(BaseModel):
    """Settings of one constrained fidelity maximization."""

    max_iterations: int = Field(500, ge=1, description="Iteration budget")
    optimizer: OptimizerConfig = Field(default_factory=OptimizerConfig, description="ADAM hyperparameters")
    convergence_threshold: float = Field(
        1e-9, ge=0.0, description="Smallest improvement of the best objective that resets patience"
    )
    patience: int = Field(50, ge=1, description="Iterations without improvement before stopping")
    keep_best: bool = Field(True, description="Return the best iterate instead of the last one")
    update_mode: Literal["adam", "linearized"] = Field("adam", description="Riemannian ADAM or polar sweeps")
