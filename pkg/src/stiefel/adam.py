"""
Riemannian ADAM module.

This module implements the ADAM optimizer on the complex Stiefel manifold with a
per-tensor scalar second moment. Steps ascend: every objective in the simulator
is maximized.
"""

import logging
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np
from pydantic import BaseModel, Field

from src.errors import DegenerateRetractionError, NonFiniteGradientError
from src.stiefel.manifold import StiefelPoint, project_tangent, retract, transport
from src.tensor_core import DTYPE

logger = logging.getLogger(__name__)

# (point matrix, euclidean gradient) -> transformed gradient
Preconditioner = Callable[[np.ndarray, np.ndarray], np.ndarray]

MAX_STEP_HALVINGS = 8


class OptimizerConfig(BaseModel):
    """Riemannian ADAM hyperparameters."""

    learning_rate: float = Field(0.05, gt=0.0, description="Step size")
    beta1: float = Field(0.9, ge=0.0, lt=1.0, description="Momentum decay")
    beta2: float = Field(0.999, ge=0.0, lt=1.0, description="Second-moment decay")
    epsilon: float = Field(1e-8, gt=0.0, description="Numerical floor added to the root second moment")


@dataclass(frozen=True, eq=False)
class AdamState:
    """Optimizer accumulators for one Stiefel point."""

    momentum: np.ndarray
    second_moment: float
    step_count: int
    config: OptimizerConfig

    @classmethod
    def fresh(cls, point: StiefelPoint, config: Optional[OptimizerConfig] = None) -> "AdamState":
        return cls(
            momentum=np.zeros(point.shape, dtype=DTYPE),
            second_moment=0.0,
            step_count=0,
            config=config or OptimizerConfig(),
        )


def adam_step(
    point: StiefelPoint,
    euclidean_gradient: np.ndarray,
    state: AdamState,
    preconditioner: Optional[Preconditioner] = None,
) -> Tuple[StiefelPoint, AdamState]:
    """
    Take one ascent step.

    Args:
        point (StiefelPoint): Current point W
        euclidean_gradient (np.ndarray): Ascent direction in the ambient space
        state (AdamState): Accumulators whose momentum is tangent at W
        preconditioner (Preconditioner, optional): Applied to the gradient before projection

    Returns:
        Tuple[StiefelPoint, AdamState]: New point and updated state

    Raises:
        NonFiniteGradientError: If the gradient has NaN or infinite entries
    """
    g = np.asarray(euclidean_gradient, dtype=DTYPE)
    if not np.all(np.isfinite(g)):
        raise NonFiniteGradientError("Gradient contains non-finite entries")
    if preconditioner is not None:
        g = np.asarray(preconditioner(point.matrix, g), dtype=DTYPE)

    cfg = state.config
    xi = project_tangent(point, g)
    t = state.step_count + 1
    momentum = cfg.beta1 * state.momentum + (1.0 - cfg.beta1) * xi
    second_moment = cfg.beta2 * state.second_moment + (1.0 - cfg.beta2) * float(np.vdot(xi, xi).real)
    m_hat = momentum / (1.0 - cfg.beta1 ** t)
    v_hat = second_moment / (1.0 - cfg.beta2 ** t)
    step = cfg.learning_rate / (np.sqrt(v_hat) + cfg.epsilon)

    for attempt in range(MAX_STEP_HALVINGS + 1):
        try:
            new_point = retract(point, m_hat, step)
            break
        except DegenerateRetractionError:
            if attempt == MAX_STEP_HALVINGS:
                raise
            logger.debug(f"Degenerate retraction, halving step {step:.3e}")
            step *= 0.5

    return new_point, AdamState(
        momentum=transport(new_point, momentum),
        second_moment=second_moment,
        step_count=t,
        config=cfg,
    )
