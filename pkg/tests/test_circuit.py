"""
Test script for circuits.

This module tests random gate sampling, the checkerboard layout and circuit
files.
"""

import json
import os
import sys
import tempfile
import unittest

import numpy as np

# Add parent directory to path to import modules
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from src.circuit import (
    Circuit, Gate, checkerboard_circuit, checkerboard_pairs, circuit_from_dict, circuit_to_dict, deserialize,
    load_circuit, random_two_qubit_gate, save_circuit, serialize
)
from src.errors import CircuitFormatError, InvalidQubitError, NonUnitaryGateError, ShapeMismatchError
from src.tensor_core import unitarity_deviation


class TestRandomGate(unittest.TestCase):
    """Tests for Haar-random two-qubit gates."""

    def test_unitary(self):
        """Test unitarity and unit determinant modulus."""
        rng = np.random.default_rng(1)
        for _ in range(100):
            gate = random_two_qubit_gate(rng)
            self.assertLessEqual(unitarity_deviation(gate.matrix), 1e-12)
            self.assertAlmostEqual(abs(np.linalg.det(gate.matrix)), 1.0, delta=1e-12)

    def test_first_moment(self):
        """Test that E|U_00|^2 = 1/4 within three standard errors over 10^5 samples."""
        rng = np.random.default_rng(2)
        samples = np.array([abs(random_two_qubit_gate(rng).matrix[0, 0]) ** 2 for _ in range(100000)])
        standard_error = samples.std() / np.sqrt(samples.size)
        self.assertLessEqual(abs(samples.mean() - 0.25), 3 * standard_error)

    def test_seeded(self):
        """Test that equal seeds give equal gates."""
        self.assertEqual(random_two_qubit_gate(seed=5, pair=(2, 3)), random_two_qubit_gate(seed=5, pair=(2, 3)))

    def test_non_adjacent_pair(self):
        """Test rejection of a gate on non-adjacent qubits."""
        with self.assertRaises(InvalidQubitError):
            Gate((0, 2), np.eye(4))

    def test_non_unitary(self):
        """Test rejection of a non-unitary matrix."""
        with self.assertRaises(NonUnitaryGateError):
            Gate((0, 1), 2 * np.eye(4))

    def test_wrong_shape(self):
        """Test rejection of a matrix that is not 4x4."""
        with self.assertRaises(ShapeMismatchError):
            Gate((0, 1), np.eye(2))

    def test_matrix_is_frozen(self):
        """Test that the gate matrix cannot be modified."""
        gate = random_two_qubit_gate(seed=3)
        with self.assertRaises(ValueError):
            gate.matrix[0, 0] = 0.0


class TestCheckerboard(unittest.TestCase):
    """Tests for the checkerboard layout."""

    def test_four_qubit_pairs(self):
        """Test the layer order on four qubits."""
        self.assertEqual(checkerboard_pairs(4), [(0, 1), (2, 3), (1, 2)])

    def test_gate_count(self):
        """Test k * (n - 1) gates."""
        self.assertEqual(checkerboard_circuit(27, 1, seed=0).gate_count, 26)
        circuit = checkerboard_circuit(9, 3, seed=0)
        self.assertEqual(circuit.gate_count, 24)
        self.assertEqual(circuit.nominal_gate_count, 27)

    def test_deterministic(self):
        """Test that the same seed gives the same circuit."""
        self.assertEqual(serialize(checkerboard_circuit(9, 2, seed=7)), serialize(checkerboard_circuit(9, 2, seed=7)))
        self.assertNotEqual(serialize(checkerboard_circuit(9, 2, seed=7)), serialize(checkerboard_circuit(9, 2, seed=8)))

    def test_sublayers(self):
        """Test that each layer splits into its even and odd sublayers."""
        circuit = checkerboard_circuit(9, 2, seed=1)
        sublayers = circuit.sublayers()
        self.assertEqual(len(sublayers), 4)
        self.assertEqual([g.pair for g in sublayers[0]], [(0, 1), (2, 3), (4, 5), (6, 7)])
        self.assertEqual([g.pair for g in sublayers[1]], [(1, 2), (3, 4), (5, 6), (7, 8)])

    def test_sublayers_of_arbitrary_order(self):
        """Test that repeated and crossing pairs start new sublayers with disjoint qubits."""
        pairs = [(0, 1), (2, 3), (1, 2), (1, 2), (4, 5), (2, 3), (6, 7)]
        circuit = Circuit(8, 1, tuple(Gate(pair, np.eye(4)) for pair in pairs))
        sublayers = circuit.sublayers()
        self.assertEqual(
            [[g.pair for g in run] for run in sublayers],
            [[(0, 1), (2, 3)], [(1, 2)], [(1, 2)], [(4, 5)], [(2, 3), (6, 7)]],
        )
        self.assertEqual(sum(len(run) for run in sublayers), circuit.gate_count)
        for run in sublayers:
            touched = [q for gate in run for q in gate.pair]
            self.assertEqual(len(touched), len(set(touched)))

    def test_empty_circuit(self):
        """Test that zero layers give no gates."""
        circuit = checkerboard_circuit(2, 0, seed=0)
        self.assertEqual(circuit.gate_count, 0)
        self.assertEqual(circuit.sublayers(), [])

    def test_too_few_qubits(self):
        """Test rejection of a single-qubit chain."""
        with self.assertRaises(ShapeMismatchError):
            checkerboard_circuit(1, 1)

    def test_gate_out_of_range(self):
        """Test rejection of a gate beyond the last qubit."""
        with self.assertRaises(InvalidQubitError):
            Circuit(3, 1, (random_two_qubit_gate(seed=0, pair=(2, 3)),))


class TestCircuitSerialization(unittest.TestCase):
    """Tests for circuit documents and files."""

    def test_round_trip(self):
        """Test that a circuit survives serialization unchanged."""
        circuit = checkerboard_circuit(9, 2, seed=11)
        restored = deserialize(serialize(circuit))
        self.assertEqual(restored, circuit)

    def test_file_round_trip(self):
        """Test saving and loading a circuit file."""
        circuit = checkerboard_circuit(4, 1, seed=12)
        with tempfile.TemporaryDirectory() as tmpdir:
            path = save_circuit(circuit, os.path.join(tmpdir, "nested", "circuit.json"))
            self.assertTrue(os.path.exists(path))
            self.assertEqual(load_circuit(path), circuit)

    def test_tampered_matrix(self):
        """Test that a non-unitary gate in a document is rejected."""
        document = circuit_to_dict(checkerboard_circuit(4, 1, seed=13))
        document["gates"][0]["matrix"][0][0] = [5.0, 0.0]
        with self.assertRaises(CircuitFormatError):
            circuit_from_dict(document)

    def test_missing_field(self):
        """Test that a document without a qubit count is rejected."""
        document = circuit_to_dict(checkerboard_circuit(4, 1, seed=14))
        del document["n"]
        with self.assertRaises(CircuitFormatError):
            circuit_from_dict(document)

    def test_invalid_json(self):
        """Test that malformed text is rejected."""
        with self.assertRaises(CircuitFormatError):
            deserialize("{not json")

    def test_missing_file(self):
        """Test that a missing file is reported as a format error."""
        with self.assertRaises(CircuitFormatError):
            load_circuit("/nonexistent/circuit.json")

    def test_document_is_json(self):
        """Test the document layout."""
        document = json.loads(serialize(checkerboard_circuit(4, 1, seed=15)))
        self.assertEqual(document["n"], 4)
        self.assertEqual(document["k"], 1)
        self.assertEqual(document["seed"], 15)
        self.assertEqual(len(document["gates"]), 3)
        self.assertEqual(len(document["gates"][0]["matrix"]), 4)


if __name__ == "__main__":
    unittest.main()
