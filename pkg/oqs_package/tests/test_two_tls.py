import unittest
import numpy as np
from numpy.testing import assert_allclose

from ..model.system import eigenbasis
from ..model.validation import validate
from ..decomposition.partition import invariant_partition, relabel
from ..builtin_models.operators import (
    inversion,
    lowering,
    number,
    single_excitation_projector,
    two_tls_coupling,
    two_tls_hamiltonian,
)
from ..builtin_models.two_tls import (
    builtin_spec,
    figure1_setup,
    load_two_tls_spec,
    mixing_angle,
    psi_populations,
    two_tls_analytics,
    two_tls_model,
)
from ..utils.error_helper import DegenerateSpectrumError, ModelValidationError


class TestOperators(unittest.TestCase):

    def test_product_basis(self):
        assert_allclose(np.diag(number(1)), [1, 0, 1, 0])
        assert_allclose(np.diag(number(2)), [1, 0, 0, 1])
        assert_allclose(np.diag(inversion(1)), [1, -1, 1, -1])
        # sigma_1 takes |e1 g2> to |g1 g2>
        self.assertEqual(lowering(1)[1, 2], 1.0)

    def test_uncoupled_hamiltonian_is_diagonal(self):
        assert_allclose(two_tls_hamiltonian(1.3, 0.7, 0.0), np.diag([2.0, 0.0, 1.3, 0.7]))

    def test_coupling_spectrum(self):
        a = 0.3
        assert_allclose(np.sort(np.linalg.eigvalsh(two_tls_coupling(a))), np.sort([1 + a, -1 - a, 1 - a, -1 + a]))

    def test_coupling_commutes_without_interaction(self):
        s = two_tls_coupling(0.5)
        h = two_tls_hamiltonian(1.0, 0.6, 0.0)
        assert_allclose(s @ h - h @ s, 0.0)
        h = two_tls_hamiltonian(1.0, 0.6, 0.2)
        self.assertGreater(np.max(np.abs(s @ h - h @ s)), 0.1)


class TestAnalytics(unittest.TestCase):

    def test_mixing_angle(self):
        self.assertAlmostEqual(mixing_angle(load_two_tls_spec(omega_r=0.3)), np.pi / 4, places=14)
        self.assertEqual(mixing_angle(load_two_tls_spec(omega_2=0.6, omega_r=0.0)), 0.0)
        self.assertAlmostEqual(mixing_angle(load_two_tls_spec(omega_1=0.6, omega_r=0.0)), np.pi / 2, places=14)
        with self.assertRaises(ModelValidationError):
            mixing_angle(load_two_tls_spec(omega_r=0.0))

    def test_energies(self):
        analytics = two_tls_analytics(load_two_tls_spec(omega_r=0.1))
        assert_allclose(analytics.energies, [2.0, 0.0, 1.1, 0.9], atol=1e-14)

    def test_default_labels(self):
        analytics = two_tls_analytics(load_two_tls_spec())
        self.assertEqual(analytics.eigenstate_labels, (2, 4, 3, 1))
        self.assertEqual(analytics.psi_index(3), 2)

    def test_mixed_projector(self):
        analytics = two_tls_analytics(load_two_tls_spec(omega_2=0.8, omega_r=0.35))
        psi_3, psi_4 = analytics.eigenvectors[:, 2], analytics.eigenvectors[:, 3]
        assert_allclose(np.outer(psi_3, psi_3) + np.outer(psi_4, psi_4), single_excitation_projector(), atol=1e-14)

    def test_numeric_matches_closed_form(self):
        for overrides in ({}, {"omega_2": 0.8, "omega_r": 0.35, "a": 0.2}, {"omega_1": 0.5, "omega_r": 0.0}):
            spec = load_two_tls_spec(**overrides)
            analytics = two_tls_analytics(spec)
            eig = eigenbasis(two_tls_model(spec))
            order = [label - 1 for label in eig.labels]
            assert_allclose(eig.frequencies, analytics.energies[order], atol=1e-12)
            for k, psi in enumerate(order):
                overlap = np.vdot(eig.basis_transform[k].conj(), analytics.eigenvectors[:, psi])
                self.assertAlmostEqual(abs(overlap), 1.0, places=12)
            expected = np.abs(analytics.coupling_in_psi_basis[np.ix_(order, order)])
            assert_allclose(np.abs(eig.coupling_in_eigenbasis), expected, atol=1e-12)


class TestModels(unittest.TestCase):

    def test_default_model(self):
        model = two_tls_model(load_two_tls_spec(), name="two-tls")
        self.assertTrue(validate(model).passed)
        # |S_34|^2 = 1/4 with phi = pi/4 and a = 1/2
        self.assertAlmostEqual(model.reservoir.g0, 4.0, places=12)
        eig = eigenbasis(model)
        self.assertEqual(relabel(invariant_partition(eig), eig.labels), [[1], [2], [3, 4]])

    def test_noninteracting_model(self):
        model = two_tls_model(builtin_spec("two-tls-noninteracting"))
        self.assertEqual(model.reservoir.g0, 1.0)
        eig = eigenbasis(model)
        self.assertEqual(invariant_partition(eig).n_blocks, 4)

    def test_symmetric_coupling_separates_all_states(self):
        eig = eigenbasis(two_tls_model(load_two_tls_spec(a=1.0)))
        self.assertEqual(invariant_partition(eig).n_blocks, 4)

    def test_degenerate_parameters(self):
        spec = load_two_tls_spec(omega_r=0.0)
        with self.assertLogs(level="WARNING"):
            model = two_tls_model(spec)
        self.assertIsNone(model.eigenstate_labels)
        with self.assertRaises(DegenerateSpectrumError):
            eigenbasis(model)

    def test_invalid_parameters(self):
        with self.assertRaises(ModelValidationError):
            load_two_tls_spec(omega_1=-1.0)
        with self.assertRaises(ValueError):
            builtin_spec("three-tls")

    def test_figure1_setup(self):
        block, conditions = figure1_setup()
        # psi_3 -> psi_4 downhill by 2r = 1
        self.assertAlmostEqual(block.rates[1, 0], 1.0, places=12)
        self.assertAlmostEqual(block.rates[0, 1], np.exp(-1.0), places=12)
        self.assertEqual(conditions, [(0.7, 0.3), (0.3, 0.7), (0.1, 0.9)])

    def test_psi_populations(self):
        analytics = two_tls_analytics(load_two_tls_spec())
        self.assertEqual(psi_populations(analytics, {3: 0.25, 4: 0.75}), [0.0, 0.75, 0.25, 0.0])


if __name__ == "__main__":
    unittest.main()
