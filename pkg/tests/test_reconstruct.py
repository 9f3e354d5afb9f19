"""Recovering pure states from marginal panels."""

import numpy as np
import pytest

import qmarginal as qm
from conftest import random_ghz_orbit


def family_contains(result, source, tol=1e-8):
    """Is the source on the reconstructed one-parameter family?"""
    cert = result.certificate
    rotated = qm.apply_locals(cert.locals_, source).amplitudes
    a = rotated[cert.support[0].to_linear()]
    b = rotated[cert.support[1].to_linear()]
    phi = np.angle((b / a) / (cert.beta / cert.alpha))
    member = qm.phase_family(cert, phi)
    return abs(member.overlap(source)) >= 1.0 - tol


def perturbed_panel(panel, entry_index, epsilon=1e-3):
    """Bump one off-diagonal element, then restore hermiticity/PSD/trace."""
    mats = [e.entries.copy() for e in panel.entries]
    m = mats[entry_index]
    m[0, m.shape[1] - 1] += epsilon
    m = 0.5 * (m + m.conj().T)
    evals, evecs = np.linalg.eigh(m)
    evals = np.clip(evals, 0.0, None)
    m = (evecs * evals) @ evecs.conj().T
    m /= np.trace(m).real
    entries = list(panel.entries)
    entries[entry_index] = qm.DensityMatrix(entries[entry_index].qubit_labels, m)
    return qm.RdmPanel(panel.n, tuple(entries))


class TestPurifyOverQubit:
    def test_balanced_rank_two_marginal(self):
        rdm = qm.panel_of_pure(qm.ghz_state(3)).entry(1)
        candidate, degenerate = qm.purify_over_qubit(rdm, 1)
        assert degenerate
        back = qm.panel_of_pure(candidate).entry(1)
        assert np.max(np.abs(back.entries - rdm.entries)) < 1e-12

    def test_rank_one_marginal_gives_product(self):
        rdm = qm.DensityMatrix((2, 3), np.diag([1.0, 0.0, 0.0, 0.0]))
        candidate, degenerate = qm.purify_over_qubit(rdm, 1)
        assert not degenerate
        np.testing.assert_allclose(abs(candidate.amplitudes[0]), 1.0, atol=1e-12)

    def test_rank_three_is_rejected(self):
        rdm = qm.DensityMatrix((2, 3), np.diag([0.5, 0.3, 0.2, 0.0]))
        with pytest.raises(qm.PanelRankError):
            qm.purify_over_qubit(rdm, 1)

    def test_candidate_marginal_always_matches(self):
        for seed in range(3):
            psi = qm.haar_random_ket(4, 1500 + seed)
            rdm = qm.panel_of_pure(psi).entry(2)
            candidate, _ = qm.purify_over_qubit(rdm, 2)
            back = qm.panel_of_pure(candidate).entry(2)
            assert np.max(np.abs(back.entries - rdm.entries)) < 1e-12


class TestReconstruct:
    @pytest.mark.parametrize("n", [3, 4, 5, 6])
    def test_haar_round_trip(self, n):
        for seed in range(3):
            psi = qm.haar_random_ket(n, 1600 + 10 * n + seed)
            result = qm.reconstruct(qm.panel_of_pure(psi))
            assert result.outcome == "unique"
            assert abs(result.state.overlap(psi)) >= 1.0 - 1e-8
            assert result.residual <= 1e-9

    def test_unbalanced_two_term_panel_gives_family(self):
        psi = qm.ghz_state(3, 0.6, 0.8)
        result = qm.reconstruct(qm.panel_of_pure(psi))
        assert result.outcome == "ghz-family"
        assert sorted(
            [abs(result.certificate.alpha), abs(result.certificate.beta)]
        ) == pytest.approx([0.6, 0.8], abs=1e-9)
        assert family_contains(result, psi)

    def test_partial_panel_example_state_is_unique(self):
        chi = qm.chi_state()
        result = qm.reconstruct(qm.panel_of_pure(chi))
        assert result.outcome == "unique"
        assert abs(result.state.overlap(chi)) >= 1.0 - 1e-10

    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_rotated_orbit_panels_give_families(self, n):
        orbit, _ = random_ghz_orbit(n, 1700 + n)
        result = qm.reconstruct(qm.panel_of_pure(orbit))
        assert result.outcome == "ghz-family"
        assert family_contains(result, orbit)
        assert result.residual <= 1e-9

    def test_balanced_orbit_panel_gives_family(self):
        orbit, _ = random_ghz_orbit(4, 1800, balanced=True)
        result = qm.reconstruct(qm.panel_of_pure(orbit))
        assert result.outcome == "ghz-family"
        assert family_contains(result, orbit)

    def test_cluster_type_panel_is_unique(self):
        cluster = qm.ket([1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, -1], 4)
        result = qm.reconstruct(qm.panel_of_pure(cluster))
        assert result.outcome == "unique"
        assert abs(result.state.overlap(cluster)) >= 1.0 - 1e-8

    def test_pair_of_pairs_panel_is_unique(self):
        bell = np.array([1, 0, 0, 1]) / np.sqrt(2)
        psi = qm.Ket(4, np.kron(bell, bell))
        result = qm.reconstruct(qm.panel_of_pure(psi))
        assert result.outcome == "unique"
        assert abs(result.state.overlap(psi)) >= 1.0 - 1e-8

    def test_product_panel_is_unique(self):
        psi = qm.random_product_ket(4, 19)
        result = qm.reconstruct(qm.panel_of_pure(psi))
        assert result.outcome == "unique"
        assert abs(result.state.overlap(psi)) >= 1.0 - 1e-8

    def test_two_qubit_panels(self):
        # entangled: the panel admits the full one-parameter family
        bell = qm.ket([1, 0, 0, 1])
        result = qm.reconstruct(qm.panel_of_pure(bell))
        assert result.outcome == "ghz-family"
        partial = qm.ket([0.6, 0, 0, 0.8])
        result = qm.reconstruct(qm.panel_of_pure(partial))
        assert result.outcome == "ghz-family"
        assert family_contains(result, partial)
        # product: unique
        product = qm.random_product_ket(2, 7)
        result = qm.reconstruct(qm.panel_of_pure(product))
        assert result.outcome == "unique"
        assert abs(result.state.overlap(product)) >= 1.0 - 1e-8

    def test_rank_three_entry_is_incompatible(self):
        psi = qm.haar_random_ket(3, 91)
        panel = qm.panel_of_pure(psi)
        entries = list(panel.entries)
        entries[1] = qm.DensityMatrix((1, 3), np.diag([0.5, 0.3, 0.2, 0.0]))
        bad = qm.RdmPanel(3, tuple(entries))
        result = qm.reconstruct(bad)
        assert result.outcome == "incompatible"
        assert "entry 2" in result.reason and "rank" in result.reason

    @pytest.mark.parametrize("entry_index", [0, 1])
    def test_perturbed_panel_is_flagged(self, entry_index):
        psi = qm.haar_random_ket(3, 92)
        bad = perturbed_panel(qm.panel_of_pure(psi), entry_index)
        result = qm.reconstruct(bad)
        assert result.outcome == "incompatible" or result.residual > 1e-9

    def test_perturbed_degenerate_panel_is_flagged(self):
        bad = perturbed_panel(qm.panel_of_pure(qm.ghz_state(3)), 1)
        result = qm.reconstruct(bad)
        assert result.outcome == "incompatible" or result.residual > 1e-9

    def test_outcomes_match_classification(self):
        cases = [
            qm.haar_random_ket(4, 93),
            random_ghz_orbit(4, 94)[0],
            qm.random_product_ket(4, 95),
        ]
        for psi in cases:
            result = qm.reconstruct(qm.panel_of_pure(psi))
            assert (result.outcome == "ghz-family") == qm.classify(psi).ghz_class


class TestCheckPanel:
    def test_own_panel_is_exact(self):
        psi = qm.haar_random_ket(4, 96)
        assert qm.check_panel(psi, qm.panel_of_pure(psi)) < 1e-12

    def test_sibling_panel_is_exact(self):
        g = qm.ghz_state(3)
        partner = qm.sibling(g, qm.classify(g).certificate)
        assert qm.check_panel(g, qm.panel_of_pure(partner)) < 1e-12

    def test_distinct_states_have_half_unit_gap(self):
        # both panels are diagonal; the largest entry gap is |1 - 1/2|
        dist = qm.check_panel(qm.basis_ket(3, 0), qm.panel_of_pure(qm.ghz_state(3)))
        assert dist == pytest.approx(0.5, abs=1e-12)

    def test_size_mismatch(self):
        with pytest.raises(ValueError):
            qm.check_panel(qm.basis_ket(2, 0), qm.panel_of_pure(qm.ghz_state(3)))
