"""
Test script for causal cones.

This module tests cone membership and the cone-contracted reduced density
matrices against dense partial traces.
"""

import itertools
import os
import sys
import unittest

import numpy as np
from numpy.testing import assert_allclose

# Add parent directory to path to import modules
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from src.errors import InvalidQubitError, StateCapError
from src.mera import (
    TensorId, TensorKind, build_product_state, build_random, causal_cone, cone_nodes, reduced_density_matrix,
    to_statevector, von_neumann_entropy
)
from src.oracle import DenseState, dense_rdm
from src.tensor_core import ComplexTensor

ALL_PAIRS_M2 = list(itertools.combinations(range(9), 2))


def dense_state(network):
    return DenseState(network.num_qubits, to_statevector(network).array)


class TestConeMembership(unittest.TestCase):
    """Tests for cone membership."""

    def test_top_always_member(self):
        """Test that the top tensor belongs to every cone."""
        for num_layers in (2, 3):
            network = build_product_state(num_layers, 4)
            top = TensorId(num_layers, TensorKind.TOP, 0)
            for q in range(network.num_qubits - 1):
                cone = causal_cone(network, (q, q + 1))
                self.assertIn(top, cone)
                self.assertEqual(cone.order()[0], top)

    def test_pair_inside_triple(self):
        """Test the cone of (0, 1) at M=2."""
        cone = causal_cone(build_product_state(2, 8), (0, 1))
        self.assertEqual(
            set(cone.members), {TensorId(1, TensorKind.ISOMETRY, 0), TensorId(2, TensorKind.TOP, 0)}
        )

    def test_pair_across_triples(self):
        """Test that a pair on a disentangler pulls in both neighboring isometries."""
        cone = causal_cone(build_product_state(2, 8), (2, 3))
        self.assertEqual(
            set(cone.members),
            {
                TensorId(1, TensorKind.DISENTANGLER, 0),
                TensorId(1, TensorKind.ISOMETRY, 0),
                TensorId(1, TensorKind.ISOMETRY, 1),
                TensorId(2, TensorKind.TOP, 0),
            },
        )
        self.assertEqual(cone.open_wires[1], frozenset({0, 1}))

    def test_bounded_width(self):
        """Test that no cone at M=3 holds more than 8 tensors per layer."""
        network = build_product_state(3, 4)
        for pair in itertools.combinations(range(27), 2):
            cone = causal_cone(network, pair)
            for layer in (1, 2):
                self.assertLessEqual(len(cone.members_at(layer)), 8)

    def test_linear_growth(self):
        """Test that adding a layer adds at most 8 cone members."""
        small, large = build_product_state(2, 4), build_product_state(3, 4)
        for q in range(8):
            small_count = len(causal_cone(small, (q, q + 1)).members)
            large_count = len(causal_cone(large, (q, q + 1)).members)
            self.assertLessEqual(large_count, small_count + 8)

    def test_invalid_qubits(self):
        """Test rejection of repeated or out-of-range qubits."""
        network = build_product_state(2, 4)
        with self.assertRaises(InvalidQubitError):
            causal_cone(network, (3, 3))
        with self.assertRaises(InvalidQubitError):
            causal_cone(network, (8, 9))
        with self.assertRaises(InvalidQubitError):
            causal_cone(network, ())

    def test_node_labels_pair_up(self):
        """Test that every label of a ket/bra cone network occurs once or twice."""
        network = build_random(3, 4, seed=1)
        cone = causal_cone(network, (12, 13))
        counts = {}
        for node in cone_nodes(cone, network.tensors, network.tensors):
            for label in node.labels:
                counts[label] = counts.get(label, 0) + 1
        open_labels = sorted(str(label) for label, count in counts.items() if count == 1)
        self.assertEqual(len(open_labels), 4)
        self.assertTrue(all(count <= 2 for count in counts.values()))


class TestReducedDensityMatrix(unittest.TestCase):
    """Tests for cone-contracted reduced density matrices."""

    def test_product_state(self):
        """Test that every single-qubit state of the product state is up."""
        network = build_product_state(2, 8)
        for qubit in range(9):
            assert_allclose(reduced_density_matrix(network, [qubit]).array, [[1, 0], [0, 0]], atol=1e-12)

    def test_all_pairs_against_dense(self):
        """Test every pair of 20 random networks against the dense partial trace."""
        for seed in range(20):
            network = build_random(2, 4, seed=seed)
            state = dense_state(network)
            for pair in ALL_PAIRS_M2:
                assert_allclose(reduced_density_matrix(network, pair).array, dense_rdm(state, pair), atol=1e-10)

    def test_distant_pair_chi_eight(self):
        """Test pair (3, 7) of a chi=8 network against the dense partial trace."""
        network = build_random(2, 8, seed=40)
        assert_allclose(
            reduced_density_matrix(network, (3, 7)).array, dense_rdm(dense_state(network), (3, 7)), atol=1e-10
        )

    def test_reversed_pair(self):
        """Test that the first listed qubit is the most significant."""
        network = build_random(2, 4, seed=41)
        assert_allclose(
            reduced_density_matrix(network, (5, 1)).array, dense_rdm(dense_state(network), (5, 1)), atol=1e-10
        )

    def test_state_properties(self):
        """Test unit trace and positivity on 50 random networks."""
        for seed in range(50):
            rho = reduced_density_matrix(build_random(2, 8, seed=100 + seed), (4, 5)).array
            self.assertAlmostEqual(np.trace(rho).real, 1.0, delta=1e-10)
            self.assertGreaterEqual(np.linalg.eigvalsh(rho).min(), -1e-10)

    def test_three_layers(self):
        """Test unit trace at M=3, beyond the dense cap."""
        network = build_random(3, 4, seed=42)
        for pair in ((0, 1), (12, 13), (25, 26), (3, 20)):
            rho = reduced_density_matrix(network, pair).array
            self.assertAlmostEqual(np.trace(rho).real, 1.0, delta=1e-10)
            assert_allclose(rho, rho.conj().T, atol=1e-12)

    def test_locality(self):
        """Test that replacing tensors outside the cone leaves the dense reduced state unchanged."""
        network = build_random(2, 8, seed=43)
        replacement = build_random(2, 8, seed=44)
        for pair in ((0, 1), (2, 3), (4, 5), (7, 8)):
            cone = causal_cone(network, pair)
            outside = {tid: replacement.tensors[tid] for tid in network.ids if tid not in cone}
            self.assertTrue(outside)
            assert_allclose(
                dense_rdm(dense_state(network.with_tensors(outside)), pair),
                dense_rdm(dense_state(network), pair),
                atol=1e-10,
            )

    def test_too_many_qubits(self):
        """Test rejection of three qubits."""
        with self.assertRaises(InvalidQubitError):
            reduced_density_matrix(build_product_state(2, 4), (0, 1, 2))


class TestStatevector(unittest.TestCase):
    """Tests for full contraction."""

    def test_cap(self):
        """Test that 27 qubits exceed the default cap."""
        with self.assertRaises(StateCapError):
            to_statevector(build_product_state(3, 4))

    def test_dense_rdm_of_statevector(self):
        """Test that the state vector reproduces the cone RDMs of all pairs."""
        network = build_random(2, 8, seed=45)
        state = dense_state(network)
        for pair in ALL_PAIRS_M2:
            assert_allclose(dense_rdm(state, pair), reduced_density_matrix(network, pair).array, atol=1e-10)


class TestEntropy(unittest.TestCase):
    """Tests for entanglement entropy."""

    def test_pure_state(self):
        """Test zero entropy for a pure single-qubit state."""
        self.assertAlmostEqual(von_neumann_entropy(ComplexTensor([[1.0, 0.0], [0.0, 0.0]])), 0.0, places=12)

    def test_maximally_mixed(self):
        """Test one bit for the maximally mixed qubit."""
        self.assertAlmostEqual(von_neumann_entropy(ComplexTensor(np.eye(2) / 2)), 1.0, places=12)

    def test_product_state_network(self):
        """Test zero entropy on every qubit of the product state."""
        network = build_product_state(2, 8)
        for qubit in range(9):
            self.assertAlmostEqual(von_neumann_entropy(reduced_density_matrix(network, (qubit,))), 0.0, places=10)


if __name__ == "__main__":
    unittest.main()
