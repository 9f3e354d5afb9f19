"""Classification, certificates, siblings, and transports."""

import numpy as np
import pytest

import qmarginal as qm
from conftest import random_ghz_orbit
from qmarginal.oracle import random_unitary_2x2
from qmarginal.tensors import PAULI_Z


def rotated_amplitudes(psi, cert):
    return qm.apply_locals(cert.locals_, psi).amplitudes


class TestClassify:
    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_recovers_constructed_orbit_amplitudes(self, n):
        for i in range(4):
            orbit, alpha_mag = random_ghz_orbit(n, 4000 + 100 * n + 7 * i)
            cls = qm.classify(orbit)
            assert cls.ghz_class
            got = sorted([abs(cls.certificate.alpha), abs(cls.certificate.beta)])
            want = sorted([alpha_mag, np.sqrt(1 - alpha_mag**2)])
            np.testing.assert_allclose(got, want, atol=1e-7)

    def test_w_state_is_determined(self):
        w = qm.ket([0, 1, 1, 0, 1, 0, 0, 0])
        cls = qm.classify(w)
        assert not cls.ghz_class
        # equal non-degenerate spectra, but the support is not antipodal
        np.testing.assert_allclose(cls.diagnostics.spectra[:, 0], 2 / 3, atol=1e-12)
        assert cls.diagnostics.branch == "non-degenerate"

    def test_single_qubit_factor_is_determined(self):
        amps = np.kron([1, 0], qm.ket([1, 0, 0, 1]).amplitudes)
        cls = qm.classify(qm.Ket(3, amps))
        assert not cls.ghz_class
        assert cls.diagnostics.branch == "pure-marginal"

    def test_two_qubit_policy(self):
        assert qm.classify(qm.ket([1, 0, 0, 1])).ghz_class  # maximally entangled
        assert qm.classify(qm.ket([0.6, 0, 0, 0.8])).ghz_class  # partially entangled
        assert not qm.classify(qm.basis_ket(2, 2)).ghz_class  # product
        with pytest.raises(ValueError):
            qm.classify(qm.basis_ket(1, 0))

    def test_verdict_is_lu_invariant(self):
        for seed, psi in enumerate(
            [qm.ghz_state(4), qm.haar_random_ket(4, 21), qm.chi_state()]
        ):
            orbit = qm.random_lu_orbit(psi, seed=6000 + seed)
            assert qm.classify(orbit).ghz_class == qm.classify(psi).ghz_class

    def test_ghz_class_spectra_match_certificate_weights(self):
        orbit, _ = random_ghz_orbit(5, 4321)
        cls = qm.classify(orbit)
        weights = sorted([abs(cls.certificate.alpha) ** 2, abs(cls.certificate.beta) ** 2])
        for j in range(5):
            got = sorted(cls.diagnostics.spectra[j])
            np.testing.assert_allclose(got, weights, atol=1e-8)

    def test_certificate_soundness(self):
        for n in (3, 4, 6):
            orbit, _ = random_ghz_orbit(n, 5100 + n)
            cls = qm.classify(orbit)
            rotated = rotated_amplitudes(orbit, cls.certificate)
            keep = {m.to_linear() for m in cls.certificate.support}
            off = np.array(
                [abs(c) for i, c in enumerate(rotated) if i not in keep]
            )
            assert off.max() < 1e-8
            partner = qm.sibling(orbit, cls.certificate)
            assert qm.panels_equal(
                qm.panel_of_pure(orbit), qm.panel_of_pure(partner), 1e-8
            )


class TestDegenerateBranch:
    def test_balanced_four_qubit_support(self):
        cert = qm.degenerate_ghz_test(qm.ghz_state(4))
        assert cert is not None
        assert cert.support[0].to_linear() in (0, 15)
        assert {m.to_linear() for m in cert.support} == {0, 15}

    def test_cluster_type_state_has_no_certificate(self):
        # all one-qubit marginals are maximally mixed, yet the span carried
        # by qubits 2..4 contains no pair of fully-product vectors
        cluster = qm.ket([1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, -1], 4)
        assert qm.degenerate_ghz_test(cluster) is None
        assert not qm.classify(cluster).ghz_class
        # cross-check with the brute-force search
        report = qm.search_sibling(cluster)
        assert not report.found

    def test_bell_pair_certificate(self):
        cert = qm.degenerate_ghz_test(qm.ket([1, 0, 0, 1]))
        assert cert is not None
        assert {m.to_linear() for m in cert.support} == {0, 3}

    def test_rotated_balanced_orbits(self):
        for n in (3, 4, 5):
            orbit, _ = random_ghz_orbit(n, 5200 + n, balanced=True)
            cert = qm.degenerate_ghz_test(orbit)
            assert cert is not None
            np.testing.assert_allclose(abs(cert.alpha), np.sqrt(0.5), atol=1e-7)

    def test_precondition_enforced(self):
        with pytest.raises(ValueError):
            qm.degenerate_ghz_test(qm.ket([0.6, 0, 0, 0.8]))

    def test_balanced_pair_of_pairs_has_no_certificate(self):
        bell = np.array([1, 0, 0, 1]) / np.sqrt(2)
        psi = qm.Ket(4, np.kron(bell, bell))
        assert qm.degenerate_ghz_test(psi) is None


class TestSiblingAndFamily:
    def test_balanced_three_qubit_sibling(self):
        g = qm.ghz_state(3)
        cert = qm.classify(g).certificate
        partner = qm.sibling(g, cert)
        expected = np.zeros(8, dtype=complex)
        expected[0], expected[7] = 1 / np.sqrt(2), -1 / np.sqrt(2)
        overlap = abs(np.vdot(expected, partner.amplitudes))
        assert overlap == pytest.approx(1.0, abs=1e-12)

    def test_unbalanced_sibling_shares_the_panel(self):
        psi = qm.ghz_state(3, 0.6, 0.8)
        cert = qm.classify(psi).certificate
        partner = qm.sibling(psi, cert)
        assert not qm.equal_up_to_phase(psi, partner)
        assert qm.panels_equal(qm.panel_of_pure(psi), qm.panel_of_pure(partner), 1e-12)

    def test_family_phase_zero_is_the_source(self):
        orbit, _ = random_ghz_orbit(4, 77)
        cert = qm.classify(orbit).certificate
        member = qm.phase_family(cert, 0.0)
        assert qm.equal_up_to_phase(member, orbit, 1e-9)

    def test_family_phase_pi_is_the_sibling(self):
        orbit, _ = random_ghz_orbit(4, 78)
        cert = qm.classify(orbit).certificate
        assert qm.equal_up_to_phase(
            qm.phase_family(cert, np.pi), qm.sibling(orbit, cert), 1e-9
        )

    def test_family_members_are_distinct_with_equal_panels(self):
        orbit, _ = random_ghz_orbit(3, 79)
        cert = qm.classify(orbit).certificate
        panel = qm.panel_of_pure(orbit)
        for phi in (0.9, 2.1, 4.4):
            member = qm.phase_family(cert, phi)
            assert not qm.equal_up_to_phase(member, orbit)
            assert qm.panels_equal(panel, qm.panel_of_pure(member), 1e-8)

    def test_sibling_rejects_foreign_certificate(self):
        cert = qm.classify(qm.ghz_state(3)).certificate
        with pytest.raises(ValueError):
            qm.sibling(qm.ket([0, 1, 1, 0, 1, 0, 0, 0]), cert)


class TestExtractLocalUnitary:
    def test_sibling_pair_gives_sign_flip_on_any_qubit(self):
        g = qm.ghz_state(3)
        partner = qm.sibling(g, qm.classify(g).certificate)
        for j in (1, 2, 3):
            transport = qm.extract_local_unitary(g, partner, j)
            # diagonal sign flip up to a global phase
            mat = transport.entries
            assert abs(mat[0, 1]) < 1e-9 and abs(mat[1, 0]) < 1e-9
            assert abs(mat[0, 0] + mat[1, 1]) < 1e-9

    def test_identity_for_equal_states(self):
        psi = qm.haar_random_ket(4, 91)
        transport = qm.extract_local_unitary(psi, psi, 2)
        assert abs(abs(np.trace(transport.entries)) - 2.0) < 1e-9

    def test_balanced_two_term_pair_gives_phase_ratio(self):
        e1 = qm.eta_state(3, np.exp(1j * 0.5))
        e2 = qm.eta_state(3, np.exp(1j * 2.2))
        transport = qm.extract_local_unitary(e1, e2, 1)
        mat = transport.entries / transport.entries[0, 0]
        np.testing.assert_allclose(mat[1, 1], np.exp(1j * 1.7), atol=1e-9)
        assert abs(mat[0, 1]) < 1e-9

    @pytest.mark.parametrize("n", [2, 3, 5, 8])
    def test_round_trip_on_generated_pairs(self, n):
        orbit, _ = random_ghz_orbit(n, 9000 + n)
        cert = qm.classify(orbit).certificate
        partner = qm.sibling(orbit, cert)
        for j in range(1, n + 1):
            transport = qm.extract_local_unitary(orbit, partner, j)
            moved = qm.apply_local(transport, orbit)
            assert abs(moved.overlap(partner)) > 1.0 - 1e-8

    def test_rejects_unrelated_states(self):
        with pytest.raises(ValueError):
            qm.extract_local_unitary(qm.haar_random_ket(3, 1), qm.haar_random_ket(3, 2), 1)


class TestAntipodalReduction:
    def test_quarter_turn_phases(self):
        # independent evaluation of the consistency condition over all
        # 8 indices: bits must agree everywhere or disagree everywhere
        pairs = [(0.0, np.pi / 2)] * 3
        expected = set()
        for idx in range(8):
            bits = [(idx >> (2 - j)) & 1 for j in range(3)]
            good = all(
                abs(np.exp(1j * ((-1) ** bits[j] - (-1) ** bits[k]) * np.pi / 2) - 1)
                < 1e-12
                for j in range(3)
                for k in range(3)
            )
            if good:
                expected.add(idx)
        assert expected == {0, 7}
        allowed = qm.antipodal_support_reduction(qm.ghz_state(3), pairs)
        assert {m.to_linear() for m in allowed} == expected

    def test_phases_from_a_sibling_pair(self):
        g = qm.ghz_state(4)
        partner = qm.sibling(g, qm.classify(g).certificate)
        phases = []
        for j in range(1, 5):
            transport = qm.extract_local_unitary(g, partner, j)
            ph, _ = qm.diagonal_phases(transport)
            assert abs(np.sin(ph.beta_j)) > 1e-8
            phases.append(ph)
        allowed = qm.antipodal_support_reduction(g, phases)
        assert {m.to_linear() for m in allowed} == {0, 15}

    def test_mixed_agreement_is_excluded(self):
        pairs = [(0.0, np.pi / 2)] * 3
        allowed = {m.to_linear() for m in qm.antipodal_support_reduction(qm.ghz_state(3), pairs)}
        for idx in (1, 2, 3, 4, 5, 6):  # agree somewhere, disagree elsewhere
            assert idx not in allowed

    def test_scalar_transport_rejected(self):
        with pytest.raises(ValueError):
            qm.antipodal_support_reduction(qm.ghz_state(3), [(0.1, 0.0)] * 3)


class TestNearThreshold:
    def test_weights_straddling_the_degeneracy_band_agree(self):
        # gap between the two weights sits just above the 1e-8 threshold
        for gap in (3e-8, 1e-7):
            a2 = 0.5 + gap / 2
            psi = qm.ghz_state(4, np.sqrt(a2), np.sqrt(1 - a2))
            orbit = qm.random_lu_orbit(psi, seed=42)
            cls = qm.classify(orbit)
            assert cls.ghz_class
            assert not cls.diagnostics.ill_conditioned

    def test_spectra_recorded_for_every_qubit(self):
        cls = qm.classify(qm.haar_random_ket(4, 3))
        assert cls.diagnostics.spectra.shape == (4, 2)
        np.testing.assert_allclose(cls.diagnostics.spectra.sum(axis=1), 1.0, atol=1e-10)


class TestRelativePhases:
    def test_sign_flip_has_quarter_turn(self):
        u = qm.SingleQubitUnitary(PAULI_Z, 1)
        ph, basis = qm.diagonal_phases(u)
        assert abs(abs(np.sin(ph.beta_j)) - 1.0) < 1e-12
        d = basis.conj().T @ u.entries @ basis
        np.testing.assert_allclose(
            d,
            np.exp(1j * ph.alpha_j)
            * np.diag([np.exp(1j * ph.beta_j), np.exp(-1j * ph.beta_j)]),
            atol=1e-12,
        )

    def test_random_unitary_round_trip(self):
        rng = np.random.default_rng(8)
        for _ in range(5):
            u = qm.SingleQubitUnitary(random_unitary_2x2(rng), 1)
            ph, basis = qm.diagonal_phases(u)
            d = basis.conj().T @ u.entries @ basis
            assert abs(d[0, 1]) < 1e-9 and abs(d[1, 0]) < 1e-9
