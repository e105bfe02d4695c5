"""
Environment loading module.

This module locates the .env file of a simulation run, builds the
environment configuration and applies its log level.
"""

import logging
import os
from typing import List, Optional

from dotenv import find_dotenv

from src.simulation.env_config import EnvConfig

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

# Configure logging
logging.basicConfig(level=logging.INFO, format=LOG_FORMAT)

logger = logging.getLogger(__name__)


def _candidate_env_files() -> List[str]:
    """.env locations in lookup order: working directory, its parent, repository root."""
    return [
        ".env",
        os.path.join("..", ".env"),
        os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", ".env"),
    ]


def find_env_file() -> Optional[str]:
    """
    Find the .env file of the current run.

    Returns:
        Optional[str]: First existing candidate, else the nearest .env above the
        working directory, else None
    """
    for candidate in _candidate_env_files():
        if os.path.isfile(candidate):
            return candidate
    return find_dotenv(usecwd=True) or None


def load_environment(env_file: Optional[str] = None) -> EnvConfig:
    """
    Load environment variables.

    Args:
        env_file (str, optional): Path to .env file; discovered when omitted

    Returns:
        EnvConfig: Environment configuration
    """
    env_file = env_file or find_env_file()
    env_config = EnvConfig(env_file)

    level = logging.getLevelName(env_config.log_level.upper())
    if isinstance(level, int):
        logging.getLogger().setLevel(level)
    else:
        logger.warning(f"Unknown LOG_LEVEL {env_config.log_level!r}, keeping {logging.getLevelName(logging.getLogger().level)}")

    logger.info(f"Environment loaded from {env_file if env_file else 'process environment'}")
    return env_config
