import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from numpy.testing import assert_allclose

from qvalues import twoqubit
from qvalues.dhvalue import (DHMatrixValue, complete_unitary,
                             completion_independence_report, dh_descriptor,
                             dh_value, verify_dh_homomorphism,
                             verify_strong_locality)
from qvalues.hilbert import (CNOT, SIGMA1, SIGMA3, lift_local,
                             operator_schmidt_rank, sample_random)
from qvalues.ncvalue import expectation_fn

seeds = st.integers(min_value=0, max_value=2**31)
dims = st.sampled_from([2, 4, 8, 16])


class TestCompletion:
    def test_basis_vector_gives_identity(self):
        e0 = np.eye(4)[0]
        assert_allclose(complete_unitary(e0).u.matrix, np.eye(4), atol=1e-15)

    def test_first_column_is_bell_like(self, psi):
        r, zeta = 0.3, 1.2
        comp = complete_unitary(psi(r, zeta))
        expected = [np.exp(-0.5j * zeta) * np.sqrt((1 + r) / 2), 0, 0,
                    np.exp(0.5j * zeta) * np.sqrt((1 - r) / 2)]
        assert np.max(np.abs(comp.u.matrix[:, 0] - expected)) <= 1e-12

    @given(seeds, dims)
    @settings(max_examples=30, deadline=None)
    def test_unitary_with_state_column(self, seed, dim):
        phi = sample_random("state", dim, seed).amplitudes
        for s in (None, seed):
            U = complete_unitary(phi, seed=s).u.matrix
            assert np.max(np.abs(U[:, 0] - phi)) <= 1e-12
            assert np.max(np.abs(U.conj().T @ U - np.eye(dim))) <= 1e-12

    def test_deterministic(self):
        phi = sample_random("state", 8, 4)
        a = complete_unitary(phi, seed=3).u.matrix
        b = complete_unitary(phi, seed=3).u.matrix
        assert np.array_equal(a, b)

    def test_seeds_differ_by_complement_rotation(self):
        phi = sample_random("state", 4, 1)
        U1 = complete_unitary(phi, seed=1).u.matrix
        U2 = complete_unitary(phi, seed=2).u.matrix
        X = U1.conj().T @ U2
        assert abs(X[0, 0] - 1) < 1e-12
        assert np.max(np.abs(X[0, 1:])) < 1e-12
        assert np.max(np.abs(X[1:, 0])) < 1e-12
        assert np.max(np.abs(X[1:, 1:].conj().T @ X[1:, 1:] - np.eye(3))) < 1e-12
        assert np.max(np.abs(U1 - U2)) > 1e-3

    def test_reference_index(self):
        phi = sample_random("state", 4, 7).amplitudes
        comp = complete_unitary(phi, reference_state_index=2)
        assert np.max(np.abs(comp.u.matrix[:, 2] - phi)) < 1e-12
        assert np.max(np.abs(comp.state - phi)) < 1e-12


class TestDHValue:
    def test_identity(self):
        comp = complete_unitary(sample_random("state", 4, 0), seed=5)
        assert_allclose(dh_value(np.eye(4), comp).matrix, np.eye(4), atol=1e-12)

    @pytest.mark.parametrize("r", [0.0, 0.3, 0.6, 1.0])
    def test_sigma3A_u_q(self, r):
        m = dh_value(lift_local(SIGMA3, 0, [2, 2]), twoqubit.u_q_completion(r, 0.9)).matrix
        ent = np.sqrt(1 - r * r)
        expected = np.array([[r, 0, 0, -ent], [0, 1, 0, 0], [0, 0, -1, 0], [-ent, 0, 0, -r]])
        assert np.max(np.abs(m - expected)) <= 1e-12

    def test_sigma1A_u_q_pattern(self):
        r, zeta = 0.3, 2.0
        m = dh_value(lift_local(SIGMA1, 0, [2, 2]), twoqubit.u_q_completion(r, zeta)).matrix
        assert abs(m[0, 1] - np.exp(-0.5j * zeta) * np.sqrt((1 - r) / 2)) < 1e-12
        assert abs(m[0, 2] - np.exp(0.5j * zeta) * np.sqrt((1 + r) / 2)) < 1e-12
        assert abs(m[3, 2] + np.exp(0.5j * zeta) * np.sqrt((1 - r) / 2)) < 1e-12

    def test_dim_mismatch(self):
        with pytest.raises(ValueError):
            dh_value(np.eye(3), complete_unitary(np.eye(4)[0]))

    def test_dict_round_trip(self):
        v = dh_value(SIGMA1, complete_unitary([1, 1j]))
        back = DHMatrixValue.from_dict(v.to_dict())
        assert np.array_equal(back.matrix, v.matrix)
        assert back.completion_id == v.completion_id

    @given(seeds, dims)
    @settings(max_examples=30, deadline=None)
    def test_star_homomorphism(self, seed, dim):
        B = sample_random("hermitian", dim, seed).matrix
        C = sample_random("hermitian", dim, seed + 1).matrix
        comp = complete_unitary(sample_random("state", dim, seed + 2), seed=seed)
        v = lambda M: dh_value(M, comp).matrix
        assert np.max(np.abs(v(B + 2.5 * C) - (v(B) + 2.5 * v(C)))) < 1e-10
        assert np.max(np.abs(v(B @ C) - v(B) @ v(C))) < 1e-10
        assert np.max(np.abs(v((B @ C).conj().T) - v(B @ C).conj().T)) < 1e-10
        assert_allclose(np.linalg.eigvalsh(v(B)), np.linalg.eigvalsh(B), atol=1e-8)
        assert np.max(np.abs(v(B) - v(B).conj().T)) <= 1e-12

    @given(seeds, dims)
    @settings(max_examples=30, deadline=None)
    def test_corner_is_expectation(self, seed, dim):
        B = sample_random("hermitian", dim, seed).matrix
        phi = sample_random("state", dim, seed + 1)
        for s in (None, 1, 2):
            m = dh_value(B, complete_unitary(phi, seed=s)).matrix
            assert abs(m[0, 0] - expectation_fn(B, phi)) <= 1e-10

    @pytest.mark.parametrize("r", [0.0, 0.3, 0.6, 0.99])
    def test_local_observable_value_not_a_product(self, r):
        m = dh_value(lift_local(SIGMA3, 0, [2, 2]), twoqubit.u_q_completion(r, 0.4)).matrix
        assert operator_schmidt_rank(m, [2, 2]) > 1

    def test_local_observable_value_product_at_r1(self):
        m = dh_value(lift_local(SIGMA3, 0, [2, 2]), twoqubit.u_q_completion(1.0, 0.4)).matrix
        assert operator_schmidt_rank(m, [2, 2]) == 1


class TestDescriptor:
    def test_slot_A_matches_fixture(self):
        fx = twoqubit.closed_form_dh(0.6, 1.0)
        d1, d3 = dh_descriptor(0, twoqubit.u_q_completion(0.6, 1.0), [2, 2])
        assert np.max(np.abs(d1.matrix - fx["sigma1A"])) <= 1e-12
        assert np.max(np.abs(d3.matrix - fx["sigma3A"])) <= 1e-12

    def test_sigma3_B_shares_corners_with_A(self):
        comp = twoqubit.u_q_completion(0.3, 2.0)
        _, a3 = dh_descriptor(0, comp, [2, 2])
        _, b3 = dh_descriptor(1, comp, [2, 2])
        corners = np.ix_([0, 3], [0, 3])
        assert np.max(np.abs(a3.matrix[corners] - b3.matrix[corners])) <= 1e-12
        # the middle blocks are sigma_3 images of |01>, |10> and differ by sign
        assert_allclose(np.diag(a3.matrix)[1:3], [1, -1], atol=1e-12)
        assert_allclose(np.diag(b3.matrix)[1:3], [-1, 1], atol=1e-12)

    def test_identity_completion_gives_bare_paulis(self):
        comp = complete_unitary(np.eye(8)[0])
        d1, d3 = dh_descriptor(1, comp, [2, 2, 2])
        assert_allclose(d1.matrix, lift_local(SIGMA1, 1, [2, 2, 2]), atol=1e-15)
        assert_allclose(d3.matrix, lift_local(SIGMA3, 1, [2, 2, 2]), atol=1e-15)

    def test_rejects_non_qubit(self):
        with pytest.raises(ValueError):
            dh_descriptor(1, complete_unitary(np.eye(6)[0]), [2, 3])


class TestHomomorphismCheck:
    def test_identity(self):
        assert verify_dh_homomorphism(np.eye(4), np.eye(4), complete_unitary(np.eye(4)[0])) < 1e-15

    def test_random(self):
        B = sample_random("hermitian", 4, 1).matrix
        C = sample_random("hermitian", 4, 2).matrix
        assert verify_dh_homomorphism(B, C, twoqubit.u_q_completion(0.3, 1.0)) <= 1e-10

    def test_paulis(self):
        obs = twoqubit.basic_observables()
        res = verify_dh_homomorphism(obs["sigma1A"], obs["sigma3A"],
                                     twoqubit.u_q_completion(0.6, 0.0))
        assert res <= 1e-10


class TestStrongLocality:
    def test_identity_process(self):
        comp = twoqubit.u_q_completion(0.3, 1.0)
        assert verify_strong_locality(SIGMA3, 0, np.eye(2), comp, [2, 2]) == 0

    @given(seeds)
    @settings(max_examples=25, deadline=None)
    def test_random_process_on_B(self, seed):
        comp = twoqubit.u_q_completion(0.3, 1.0)
        U = sample_random("unitary", 2, seed).matrix
        assert verify_strong_locality(SIGMA3, 0, U, comp, [2, 2]) <= 1e-12

    def test_cnot_on_BC(self):
        comp = complete_unitary(sample_random("state", 8, 3), seed=1)
        assert verify_strong_locality(SIGMA1, 0, CNOT, comp, [2, 2, 2]) <= 1e-12

    def test_local_on_middle_slot(self):
        comp = complete_unitary(sample_random("state", 8, 4))
        U = sample_random("unitary", 4, 5).matrix
        assert verify_strong_locality(SIGMA1, 1, U, comp, [2, 2, 2]) <= 1e-12


class TestCompletionReport:
    def test_eigenstate_corner_is_eigenvalue(self):
        vals, vecs = np.linalg.eigh(sample_random("hermitian", 4, 2).matrix)
        B = vecs @ np.diag(vals) @ vecs.conj().T
        rep = completion_independence_report(B, vecs[:, 3], [1, 2, 3])
        assert_allclose(rep.corner_entries, [vals[3]] * 3, atol=1e-10)
        assert rep.passed

    def test_sigma3A_corner_is_r(self, psi):
        obs = twoqubit.basic_observables()
        rep = completion_independence_report(obs["sigma3A"], psi(0.6, 1.0), [0, 1, 2])
        assert_allclose(rep.corner_entries, [0.6] * 3, atol=1e-10)

    def test_random_dim8(self):
        B = sample_random("hermitian", 8, 11).matrix
        rep = completion_independence_report(B, sample_random("state", 8, 12), [4, 5, 6])
        assert rep.max_conjugation_residual <= 1e-10
        assert rep.max_fixing_residual <= 1e-10
        assert rep.passed
        assert rep.to_dict()["pass"] is True

    def test_needs_two_seeds(self):
        with pytest.raises(ValueError):
            completion_independence_report(np.eye(2), [1, 0], [1])
