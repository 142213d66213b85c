import unittest
import numpy as np
from numpy.testing import assert_allclose

from ..model.system import SystemModel, eigenbasis
from ..decomposition.partition import (
    SubspacePartition,
    coupling_graph,
    invariant_partition,
    block_permuted_coupling,
    is_minimal,
    partition_report,
    relabel,
)
from ..builtin_models.two_tls import load_two_tls_spec, two_tls_model
from .model_factory import FLAT, block_coupling, model_from_eigenbasis, random_blocks, random_spectrum, sparse_coupling


class TestCouplingGraph(unittest.TestCase):

    def test_noninteracting_two_tls_has_no_edges(self):
        eig = eigenbasis(two_tls_model(load_two_tls_spec(omega_2=0.6, omega_r=0.0)))
        self.assertEqual(coupling_graph(eig).number_of_edges(), 0)

    def test_interacting_two_tls_has_one_edge(self):
        eig = eigenbasis(two_tls_model(load_two_tls_spec(omega_r=0.1)))
        graph = coupling_graph(eig)
        self.assertEqual(graph.number_of_edges(), 1)
        (i, j), = graph.edges()
        self.assertEqual(sorted([eig.labels[i], eig.labels[j]]), [3, 4])

    def test_dense_coupling_gives_complete_graph(self):
        model = SystemModel(hamiltonian=np.diag(np.arange(5.0)), coupling_operator=np.ones((5, 5)), reservoir=FLAT, temperature=1.0)
        self.assertEqual(coupling_graph(eigenbasis(model)).number_of_edges(), 10)


class TestInvariantPartition(unittest.TestCase):

    def test_two_tls_partitions(self):
        noninteracting = eigenbasis(two_tls_model(load_two_tls_spec(omega_2=0.6, omega_r=0.0)))
        self.assertEqual(invariant_partition(noninteracting).blocks, ((0,), (1,), (2,), (3,)))
        interacting = eigenbasis(two_tls_model(load_two_tls_spec(omega_r=0.1)))
        part = invariant_partition(interacting)
        self.assertEqual(part.block_sizes, (1, 2, 1))
        self.assertEqual(relabel(part, interacting.labels), [[1], [2], [3, 4]])

    def test_symmetric_coupling_gives_four_blocks_despite_interaction(self):
        eig = eigenbasis(two_tls_model(load_two_tls_spec(omega_r=0.5, a=1.0)))
        self.assertEqual(invariant_partition(eig).n_blocks, 4)

    def test_identity_coupling(self):
        model = SystemModel(hamiltonian=np.diag([0.0, 0.3, 1.0]), coupling_operator=np.eye(3), reservoir=FLAT, temperature=1.0)
        self.assertEqual(invariant_partition(eigenbasis(model)).blocks, ((0,), (1,), (2,)))

    def test_random_partitions_are_sound_and_minimal(self):
        rng = np.random.default_rng(20)
        for _ in range(30):
            n = int(rng.integers(2, 9))
            eig = eigenbasis(model_from_eigenbasis(random_spectrum(rng, n), sparse_coupling(rng, n), rng))
            part = invariant_partition(eig)
            magnitude = np.abs(eig.coupling_in_eigenbasis)
            same = part.same_block_mask()
            self.assertLessEqual(magnitude[~same].max(initial=0.0), part.epsilon_s)
            self.assertTrue(is_minimal(eig, part))

    def test_planted_blocks_are_recovered(self):
        rng = np.random.default_rng(21)
        for _ in range(20):
            n = int(rng.integers(3, 9))
            blocks = random_blocks(rng, n, int(rng.integers(1, n + 1)))
            model = model_from_eigenbasis(np.arange(n) * 0.4, block_coupling(rng, n, blocks, density=0.3), rng)
            part = invariant_partition(eigenbasis(model))
            self.assertEqual(part.blocks, tuple(sorted(tuple(b) for b in blocks)))

    def test_shuffled_basis_gives_same_blocks(self):
        rng = np.random.default_rng(22)
        n = 6
        frequencies = random_spectrum(rng, n)
        coupling = sparse_coupling(rng, n, sparsity=0.7)
        shuffle = rng.permutation(n)
        reference = invariant_partition(eigenbasis(model_from_eigenbasis(frequencies, coupling)))
        # the same model written in a shuffled input basis sorts back to the same eigenbasis
        shuffled = SystemModel(
            hamiltonian=np.diag(frequencies[shuffle]),
            coupling_operator=coupling[np.ix_(shuffle, shuffle)],
            reservoir=FLAT,
            temperature=1.0,
        )
        self.assertEqual(invariant_partition(eigenbasis(shuffled)).blocks, reference.blocks)


class TestBlockPermutedCoupling(unittest.TestCase):

    def test_interleaved_groups_become_contiguous(self):
        rng = np.random.default_rng(5)
        blocks = [[0, 2, 4], [1, 3, 5]]
        model = SystemModel(
            hamiltonian=np.diag(np.arange(6.0)),
            coupling_operator=block_coupling(rng, 6, blocks),
            reservoir=FLAT,
            temperature=1.0,
        )
        eig = eigenbasis(model)
        part = invariant_partition(eig)
        permuted = block_permuted_coupling(eig, part)
        self.assertEqual(part.permutation, (0, 2, 4, 1, 3, 5))
        assert_allclose(permuted[:3, 3:], 0.0)
        assert_allclose(permuted[3:, :3], 0.0)
        order = np.argsort(part.permutation)
        assert_allclose(permuted[np.ix_(order, order)], eig.coupling_in_eigenbasis)

    def test_interacting_two_tls_blocks_along_diagonal(self):
        eig = eigenbasis(two_tls_model(load_two_tls_spec()))
        part = invariant_partition(eig)
        permuted = block_permuted_coupling(eig, part)
        # ascending order is psi_2, psi_4, psi_3, psi_1
        self.assertEqual(part.block_sizes, (1, 2, 1))
        self.assertAlmostEqual(np.abs(permuted[1, 2]), 0.5 * np.sin(np.pi / 2), places=12)

    def test_identity_unchanged(self):
        model = SystemModel(hamiltonian=np.diag([0.0, 1.0, 2.0]), coupling_operator=np.eye(3), reservoir=FLAT, temperature=1.0)
        eig = eigenbasis(model)
        assert_allclose(block_permuted_coupling(eig, invariant_partition(eig)), np.eye(3))

    def test_dimension_mismatch(self):
        eig = eigenbasis(two_tls_model(load_two_tls_spec()))
        with self.assertRaises(ValueError):
            block_permuted_coupling(eig, SubspacePartition(blocks=((0,), (1,))))

    def test_wrong_partition_is_rejected(self):
        eig = eigenbasis(two_tls_model(load_two_tls_spec()))
        with self.assertRaises(ValueError):
            block_permuted_coupling(eig, SubspacePartition(blocks=((0,), (1,), (2,), (3,))))


class TestPartitionReport(unittest.TestCase):

    def test_report_is_one_based(self):
        eig = eigenbasis(two_tls_model(load_two_tls_spec()))
        report = partition_report(eig, invariant_partition(eig))
        self.assertEqual(report["blocks"], [[1], [2, 3], [4]])
        self.assertEqual(report["labelled_blocks"], [[1], [2], [3, 4]])
        self.assertEqual(report["block_sizes"], [1, 2, 1])
        self.assertEqual(sorted(report["permutation"]), [1, 2, 3, 4])

    def test_invalid_partitions(self):
        with self.assertRaises(ValueError):
            SubspacePartition(blocks=((0, 1), (1, 2)))
        with self.assertRaises(ValueError):
            SubspacePartition(blocks=((0,), (2,)))


if __name__ == "__main__":
    unittest.main()
