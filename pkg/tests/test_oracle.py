"""
Test script for the dense state-vector oracle.
"""

import os
import sys
import unittest

import numpy as np
from numpy.testing import assert_allclose

# Add parent directory to path to import modules
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from src.circuit import Circuit, checkerboard_circuit, random_two_qubit_gate
from src.errors import InvalidQubitError, ShapeMismatchError, StateCapError
from src.mera import build_product_state, build_random, to_statevector
from src.oracle import DenseState, apply_two_qubit_gate, dense_rdm, exact_fidelity, run_dense


def random_state(rng, n):
    psi = rng.standard_normal(2 ** n) + 1j * rng.standard_normal(2 ** n)
    return DenseState(n, psi / np.linalg.norm(psi))


class TestDenseState(unittest.TestCase):
    """Tests for dense states."""

    def test_zero_state(self):
        """Test the all-zero basis state."""
        state = DenseState.zero_state(3)
        self.assertEqual(state.amplitudes[0], 1.0)
        self.assertEqual(np.count_nonzero(state.amplitudes), 1)

    def test_cap(self):
        """Test rejection above the qubit cap."""
        with self.assertRaises(StateCapError):
            DenseState.zero_state(13)
        with self.assertRaises(StateCapError):
            DenseState.zero_state(5, cap=4)
        with self.assertRaises(StateCapError):
            DenseState.zero_state(13, cap=27)
        with self.assertRaises(StateCapError):
            DenseState(1, np.array([1.0, 0.0]), cap=13)

    def test_norm(self):
        """Test rejection of an unnormalized vector."""
        with self.assertRaises(ShapeMismatchError):
            DenseState(2, np.ones(4))

    def test_size(self):
        """Test rejection of a vector of the wrong length."""
        with self.assertRaises(ShapeMismatchError):
            DenseState(2, np.array([1.0, 0.0]))


class TestGateApplication(unittest.TestCase):
    """Tests for dense gate application."""

    def setUp(self):
        """Set up random generator."""
        self.rng = np.random.default_rng(1)

    def test_first_column(self):
        """Test that a gate on |00> gives its first column."""
        gate = random_two_qubit_gate(self.rng).matrix
        result = apply_two_qubit_gate(DenseState.zero_state(2), gate, (0, 1))
        assert_allclose(result.amplitudes, gate[:, 0], atol=1e-14)

    def test_matches_kronecker_product(self):
        """Test against the full matrix on three qubits."""
        gate = random_two_qubit_gate(self.rng).matrix
        state = random_state(self.rng, 3)
        assert_allclose(
            apply_two_qubit_gate(state, gate, (1, 2)).amplitudes, np.kron(np.eye(2), gate) @ state.amplitudes,
            atol=1e-13,
        )
        assert_allclose(
            apply_two_qubit_gate(state, gate, (0, 1)).amplitudes, np.kron(gate, np.eye(2)) @ state.amplitudes,
            atol=1e-13,
        )

    def test_linear(self):
        """Test linearity in the input state."""
        gate = random_two_qubit_gate(self.rng).matrix
        a, b = random_state(self.rng, 4), random_state(self.rng, 4)
        combined = (a.amplitudes + 1j * b.amplitudes) / np.linalg.norm(a.amplitudes + 1j * b.amplitudes)
        left = apply_two_qubit_gate(DenseState(4, combined), gate, (2, 3)).amplitudes
        right = apply_two_qubit_gate(a, gate, (2, 3)).amplitudes + 1j * apply_two_qubit_gate(b, gate, (2, 3)).amplitudes
        assert_allclose(left, right / np.linalg.norm(a.amplitudes + 1j * b.amplitudes), atol=1e-13)

    def test_invalid_pair(self):
        """Test rejection of repeated or out-of-range qubits."""
        with self.assertRaises(InvalidQubitError):
            apply_two_qubit_gate(DenseState.zero_state(3), np.eye(4), (1, 1))
        with self.assertRaises(InvalidQubitError):
            apply_two_qubit_gate(DenseState.zero_state(3), np.eye(4), (2, 3))


class TestRunDense(unittest.TestCase):
    """Tests for dense circuit evolution."""

    def test_empty_circuit(self):
        """Test that no gates leave the state unchanged."""
        initial = DenseState.zero_state(4)
        assert_allclose(run_dense(Circuit(4, 0, ()), initial).amplitudes, initial.amplitudes)

    def test_norm_preserved(self):
        """Test the norm after 100 random gates."""
        circuit = checkerboard_circuit(6, 20, seed=2)
        self.assertEqual(circuit.gate_count, 100)
        state = run_dense(circuit, DenseState.zero_state(6))
        self.assertAlmostEqual(np.linalg.norm(state.amplitudes), 1.0, delta=1e-12)

    def test_qubit_mismatch(self):
        """Test rejection of a circuit on a different number of qubits."""
        with self.assertRaises(ShapeMismatchError):
            run_dense(checkerboard_circuit(4, 1, seed=0), DenseState.zero_state(3))


class TestExactFidelity(unittest.TestCase):
    """Tests for exact fidelities."""

    def test_product_state(self):
        """Test fidelity one against the all-zero state."""
        self.assertAlmostEqual(exact_fidelity(DenseState.zero_state(9), build_product_state(2, 4)), 1.0, delta=1e-12)

    def test_orthogonal_state(self):
        """Test fidelity zero against a flipped first qubit."""
        amplitudes = np.zeros(2 ** 9, dtype=complex)
        amplitudes[2 ** 8] = 1.0
        self.assertAlmostEqual(exact_fidelity(DenseState(9, amplitudes), build_product_state(2, 4)), 0.0, delta=1e-12)

    def test_network_state(self):
        """Test fidelity one against the network's own state vector."""
        network = build_random(2, 4, seed=3)
        state = DenseState(9, to_statevector(network).array)
        self.assertAlmostEqual(exact_fidelity(state, network), 1.0, delta=1e-10)

    def test_qubit_mismatch(self):
        """Test rejection of a network on a different number of qubits."""
        with self.assertRaises(ShapeMismatchError):
            exact_fidelity(DenseState.zero_state(3), build_product_state(2, 4))


class TestDenseRdm(unittest.TestCase):
    """Tests for dense reduced density matrices."""

    def test_basis_state(self):
        """Test the reduced state of the all-zero state."""
        state = DenseState.zero_state(3)
        assert_allclose(dense_rdm(state, (1,)), [[1, 0], [0, 0]], atol=1e-15)
        expected = np.zeros((4, 4))
        expected[0, 0] = 1.0
        assert_allclose(dense_rdm(state, (0, 2)), expected, atol=1e-15)

    def test_bell_state(self):
        """Test the maximally mixed marginal of a Bell pair."""
        state = DenseState(2, np.array([1.0, 0.0, 0.0, 1.0]) / np.sqrt(2.0))
        assert_allclose(dense_rdm(state, (0,)), np.eye(2) / 2, atol=1e-15)
        assert_allclose(dense_rdm(state, (1,)), np.eye(2) / 2, atol=1e-15)

    def test_random_state(self):
        """Test unit trace, hermiticity and positivity."""
        rng = np.random.default_rng(4)
        for _ in range(20):
            rho = dense_rdm(random_state(rng, 5), (3, 1))
            self.assertAlmostEqual(np.trace(rho).real, 1.0, delta=1e-12)
            assert_allclose(rho, rho.conj().T, atol=1e-14)
            self.assertGreaterEqual(np.linalg.eigvalsh(rho).min(), -1e-12)

    def test_too_many_qubits(self):
        """Test rejection of three qubits."""
        with self.assertRaises(InvalidQubitError):
            dense_rdm(DenseState.zero_state(3), (0, 1, 2))


if __name__ == "__main__":
    unittest.main()
