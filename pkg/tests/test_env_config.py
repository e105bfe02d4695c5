"""
Test script for the environment configuration.

This module tests environment defaults, overrides from variables and .env
files, and the configuration groups.
"""

import logging
import os
import sys
import tempfile
import unittest
from unittest.mock import patch

from pydantic import ValidationError

# Add parent directory to path to import modules
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from src.env_loader import load_environment
from src.errors import ConfigError
from src.simulation import EnvConfig, RunConfig

MERA_VARIABLES = [
    "MERA_LEARNING_RATE", "MERA_BETA1", "MERA_BETA2", "MERA_EPSILON", "MERA_MAX_ITERATIONS",
    "MERA_CONVERGENCE_THRESHOLD", "MERA_PATIENCE", "MERA_MAX_WORKERS",
    "MERA_ORACLE_CAP", "OUTPUT_DIR", "LOG_LEVEL",
]


class TestEnvConfig(unittest.TestCase):
    """Tests for the environment configuration."""

    def setUp(self):
        """Clear simulation variables."""
        self.saved = {name: os.environ.pop(name) for name in MERA_VARIABLES if name in os.environ}

    def tearDown(self):
        """Restore simulation variables."""
        for name in MERA_VARIABLES:
            os.environ.pop(name, None)
        os.environ.update(self.saved)

    def test_env_config_defaults(self):
        """Test environment configuration defaults."""
        env_config = EnvConfig("/nonexistent/.env")
        self.assertEqual(env_config.learning_rate, 0.05)
        self.assertEqual(env_config.max_iterations, 500)
        self.assertEqual(env_config.convergence_threshold, 1e-9)
        self.assertEqual(env_config.output_dir, "simulation_output")
        self.assertEqual(env_config.oracle_cap, 12)
        self.assertGreaterEqual(env_config.max_workers, 1)

    def test_env_config_from_env(self):
        """Test environment configuration from environment variables."""
        with patch.dict(os.environ, {"MERA_LEARNING_RATE": "0.2", "MERA_MAX_WORKERS": "3"}):
            env_config = EnvConfig()
        self.assertEqual(env_config.learning_rate, 0.2)
        self.assertEqual(env_config.max_workers, 3)

    def test_env_config_from_file(self):
        """Test loading values from a .env file."""
        with tempfile.TemporaryDirectory() as tmpdir:
            path = os.path.join(tmpdir, ".env")
            with open(path, "w") as f:
                f.write("MERA_PATIENCE=7\nOUTPUT_DIR=results\n")
            env_config = EnvConfig(path)
        self.assertEqual(env_config.patience, 7)
        self.assertEqual(env_config.output_dir, "results")

    def test_invalid_value(self):
        """Test that an unparsable variable raises a configuration error naming it."""
        with patch.dict(os.environ, {"MERA_PATIENCE": "many"}):
            with self.assertRaises(ConfigError) as ctx:
                EnvConfig()
        self.assertIn("MERA_PATIENCE", str(ctx.exception))

    def test_oracle_cap_above_limit(self):
        """Test that an oracle cap above 12 qubits is rejected by the run configuration."""
        with patch.dict(os.environ, {"MERA_ORACLE_CAP": "27"}):
            env_config = EnvConfig()
        with self.assertRaises(ValidationError):
            RunConfig.from_env(env_config, qubits=27, oracle_check=True)

    def test_get_optimizer_config(self):
        """Test getting optimizer configuration."""
        config = EnvConfig().get_optimizer_config()
        self.assertEqual(
            set(config),
            {"learning_rate", "beta1", "beta2", "epsilon", "max_iterations", "convergence_threshold", "patience"},
        )
        self.assertEqual(config["beta1"], 0.9)

    def test_get_all_config(self):
        """Test getting all configuration groups."""
        config = EnvConfig().get_all_config()
        self.assertEqual(set(config), {"optimizer", "app", "execution"})
        self.assertEqual(config["execution"]["oracle_cap"], 12)

    def test_load_environment(self):
        """Test loading an explicit .env file and applying its log level."""
        root = logging.getLogger()
        previous = root.level
        with tempfile.TemporaryDirectory() as tmpdir:
            path = os.path.join(tmpdir, ".env")
            with open(path, "w") as f:
                f.write("LOG_LEVEL=WARNING\nMERA_ORACLE_CAP=10\n")
            try:
                env_config = load_environment(path)
                self.assertEqual(root.level, logging.WARNING)
            finally:
                root.setLevel(previous)
        self.assertEqual(env_config.oracle_cap, 10)
        self.assertEqual(RunConfig.from_env(env_config).oracle_cap, 10)

    def test_unknown_log_level(self):
        """Test that an unknown log level keeps the current one."""
        root = logging.getLogger()
        previous = root.level
        with patch.dict(os.environ, {"LOG_LEVEL": "CHATTY"}):
            load_environment("/nonexistent/.env")
        self.assertEqual(root.level, previous)


if __name__ == "__main__":
    unittest.main()
