"""
Simulation environment configuration module.

This module reads optimizer defaults, execution limits and application
settings from environment variables and an optional .env file.
"""

import logging
import os
from typing import Any, Callable, Dict, Optional, TypeVar

from dotenv import load_dotenv

from src.errors import ConfigError

logger = logging.getLogger(__name__)

T = TypeVar("T")


def _read(name: str, default: str, parse: Callable[[str], T]) -> T:
    raw = os.getenv(name, default)
    try:
        return parse(raw)
    except ValueError as e:
        raise ConfigError(f"Environment variable {name}={raw!r} is not a valid {parse.__name__}") from e


class EnvConfig:
    """Simulation settings taken from the environment."""

    def __init__(self, env_file: Optional[str] = None):
        """
        Load the .env file and read all settings.

        Variables already set in the process take precedence over the file.

        Args:
            env_file (str, optional): Path to .env file; python-dotenv's search is used when missing

        Raises:
            ConfigError: If a variable cannot be parsed
        """
        if env_file and os.path.exists(env_file):
            load_dotenv(env_file)
            logger.info(f"Loaded environment variables from {env_file}")
        else:
            load_dotenv()
            logger.debug("No .env file given, searched default locations")

        # Optimizer
        self.learning_rate = _read("MERA_LEARNING_RATE", "0.05", float)
        self.beta1 = _read("MERA_BETA1", "0.9", float)
        self.beta2 = _read("MERA_BETA2", "0.999", float)
        self.epsilon = _read("MERA_EPSILON", "1e-8", float)
        self.max_iterations = _read("MERA_MAX_ITERATIONS", "500", int)
        self.convergence_threshold = _read("MERA_CONVERGENCE_THRESHOLD", "1e-9", float)
        self.patience = _read("MERA_PATIENCE", "50", int)

        # Application
        self.output_dir = os.getenv("OUTPUT_DIR", "simulation_output")
        self.log_level = os.getenv("LOG_LEVEL", "INFO")

        # Execution
        self.max_workers = max(1, _read("MERA_MAX_WORKERS", str(os.cpu_count() or 1), int))
        self.oracle_cap = _read("MERA_ORACLE_CAP", "12", int)

    def get_optimizer_config(self) -> Dict[str, Any]:
        """
        Optimizer defaults.

        Returns:
            Dict[str, Any]: ADAM hyperparameters and stopping rules
        """
        return {
            "learning_rate": self.learning_rate,
            "beta1": self.beta1,
            "beta2": self.beta2,
            "epsilon": self.epsilon,
            "max_iterations": self.max_iterations,
            "convergence_threshold": self.convergence_threshold,
            "patience": self.patience,
        }

    def get_execution_config(self) -> Dict[str, Any]:
        return {"max_workers": self.max_workers, "oracle_cap": self.oracle_cap}

    def get_all_config(self) -> Dict[str, Any]:
        """
        All settings grouped by concern.

        Returns:
            Dict[str, Any]: "optimizer", "app" and "execution" groups
        """
        return {
            "optimizer": self.get_optimizer_config(),
            "app": {"output_dir": self.output_dir, "log_level": self.log_level},
            "execution": self.get_execution_config(),
        }
