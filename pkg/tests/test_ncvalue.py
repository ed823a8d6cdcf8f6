import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from numpy.testing import assert_allclose

from qvalues import twoqubit
from qvalues.hilbert import SIGMA1, SIGMA3, StateVector, lift_local, sample_random
from qvalues.ncvalue import (NCValue, expectation_fn, nc_diff,
                             nc_diff_up_to_phase, nc_value,
                             nc_value_of_product, star_scalar,
                             transport_under_local_process, uncertainty,
                             v_components)

seeds = st.integers(min_value=0, max_value=2**31)
dims = st.sampled_from([2, 4, 8, 16])
OBS = twoqubit.basic_observables()


def wirtinger_oracle(B, z, h=1e-6):
    """d f / d z_n of f(z) = <z|B|z>/<z|z> by central differences.

    Uses d/dz = (d/dx - i d/dy) / 2 on the unnormalized quotient.
    """
    B = np.asarray(B)

    def f(w):
        return np.vdot(w, B @ w) / np.vdot(w, w)

    out = np.zeros(z.size, dtype=complex)
    for n in range(z.size):
        e = np.zeros(z.size)
        e[n] = h
        dx = (f(z + e) - f(z - e)) / (2 * h)
        dy = (f(z + 1j * e) - f(z - 1j * e)) / (2 * h)
        out[n] = (dx - 1j * dy) / 2
    return out


class TestExpectation:
    def test_identity(self):
        phi = sample_random("state", 5, 0)
        assert abs(expectation_fn(np.eye(5), phi) - 1) < 1e-14

    @pytest.mark.parametrize("r", [0.0, 0.3, 0.6, 1.0])
    def test_sigma3A_gives_r(self, psi, r):
        assert abs(expectation_fn(OBS["sigma3A"], psi(r, 1.1)) - r) < 1e-12

    def test_sigma1A_is_zero(self, psi):
        assert abs(expectation_fn(OBS["sigma1A"], psi(0.4, 2.0))) < 1e-12

    def test_dim_mismatch(self):
        with pytest.raises(ValueError):
            expectation_fn(np.eye(3), StateVector([1, 0]))


class TestVComponents:
    @given(seeds, st.sampled_from([2, 3, 4]))
    @settings(max_examples=20, deadline=None)
    def test_matches_wirtinger_derivative(self, seed, dim):
        B = sample_random("hermitian", dim, seed).matrix
        z = sample_random("state", dim, seed + 1).amplitudes
        assert np.max(np.abs(v_components(B, z) - wirtinger_oracle(B, z))) < 1e-8

    def test_eigenstate_gives_zero(self):
        vals, vecs = np.linalg.eigh(sample_random("hermitian", 4, 3).matrix)
        B = vecs @ np.diag(vals) @ vecs.conj().T
        assert np.max(np.abs(v_components(B, vecs[:, 2]))) < 1e-12

    @pytest.mark.parametrize("r,zeta", [(0.0, 0.0), (0.3, 1.0), (0.6, np.pi), (0.9, 5.0)])
    def test_sigma1A_bell_like(self, psi, r, zeta):
        v = v_components(OBS["sigma1A"], psi(r, zeta))
        expected = [0, np.exp(-0.5j * zeta) * np.sqrt((1 - r) / 2),
                    np.exp(0.5j * zeta) * np.sqrt((1 + r) / 2), 0]
        assert np.max(np.abs(v - expected)) < 1e-12

    @pytest.mark.parametrize("r,zeta", [(0.0, 0.0), (0.3, 1.0), (0.6, np.pi), (0.9, 5.0)])
    def test_sigma3A_bell_like(self, psi, r, zeta):
        v = v_components(OBS["sigma3A"], psi(r, zeta))
        expected = [(1 - r) * np.exp(0.5j * zeta) * np.sqrt((1 + r) / 2), 0, 0,
                    -(1 + r) * np.exp(-0.5j * zeta) * np.sqrt((1 - r) / 2)]
        assert np.max(np.abs(v - expected)) < 1e-12

    @given(seeds, dims)
    @settings(max_examples=30, deadline=None)
    def test_orthogonal_to_state(self, seed, dim):
        B = sample_random("hermitian", dim, seed).matrix
        phi = sample_random("state", dim, seed + 1).amplitudes
        assert abs(np.sum(v_components(B, phi) * phi)) < 1e-10

    @given(seeds, dims)
    @settings(max_examples=30, deadline=None)
    def test_real_f_for_hermitian(self, seed, dim):
        B = sample_random("hermitian", dim, seed)
        phi = sample_random("state", dim, seed + 1)
        assert abs(nc_value(B, phi).f.imag) < 1e-12


class TestNCValue:
    def test_identity(self):
        val = nc_value(np.eye(4), sample_random("state", 4, 9))
        assert abs(val.f - 1) < 1e-14
        assert np.max(np.abs(val.v)) < 1e-14

    def test_sigma3A_product_limit(self, psi):
        for zeta in (0.0, 2.0):
            val = nc_value(OBS["sigma3A"], psi(1.0, zeta))
            assert nc_diff(val, NCValue(1, [0, 0, 0, 0])) < 1e-12

    def test_sigma1A_product_limit(self, psi):
        val = nc_value(OBS["sigma1A"], psi(1.0, 0.0))
        assert nc_diff(val, NCValue(0, [0, 0, 1, 0])) < 1e-12

    def test_linear_in_operator(self):
        B = sample_random("hermitian", 8, 1).matrix
        C = sample_random("hermitian", 8, 2).matrix
        phi = sample_random("state", 8, 3)
        lhs = nc_value(0.7 * B - 2.5 * C, phi)
        rhs = 0.7 * nc_value(B, phi) - 2.5 * nc_value(C, phi)
        assert nc_diff(lhs, rhs) < 1e-12

    @given(seeds, st.floats(0, 2 * np.pi))
    @settings(max_examples=25, deadline=None)
    def test_phase_covariance(self, seed, alpha):
        B = sample_random("hermitian", 4, seed).matrix
        z = sample_random("state", 4, seed + 1).amplitudes
        a, b = nc_value(B, z), nc_value(B, np.exp(1j * alpha) * z)
        assert abs(a.f - b.f) < 1e-12
        assert np.max(np.abs(b.v - np.exp(-1j * alpha) * a.v)) < 1e-12
        assert nc_diff_up_to_phase(a, b) < 1e-12

    def test_dict_round_trip(self):
        val = nc_value(OBS["sigma1B"], twoqubit.bell_like_state(0.3, 1.0))
        back = NCValue.from_dict(val.to_dict())
        assert nc_diff(val, back) == 0


class TestStar:
    def test_eigenstate_square(self):
        a = nc_value(SIGMA3, [1, 0])
        assert abs(star_scalar(a, a) - 1) < 1e-15

    def test_sigma1A_sigma3A(self, psi):
        phi = psi(0.3, 0.8)
        a, b = nc_value(OBS["sigma1A"], phi), nc_value(OBS["sigma3A"], phi)
        direct = expectation_fn(OBS["sigma1A"].matrix @ OBS["sigma3A"].matrix, phi)
        assert abs(star_scalar(a, b) - direct) < 1e-12

    @given(seeds, dims)
    @settings(max_examples=30, deadline=None)
    def test_square_is_second_moment(self, seed, dim):
        B = sample_random("hermitian", dim, seed).matrix
        phi = sample_random("state", dim, seed + 1)
        a = nc_value(B, phi)
        sq = star_scalar(a, a)
        assert abs(sq.imag) < 1e-12
        assert abs(sq - (a.f ** 2 + np.sum(np.abs(a.v) ** 2))) < 1e-10
        assert abs(sq - expectation_fn(B @ B, phi)) < 1e-10

    def test_dim_mismatch(self):
        with pytest.raises(ValueError):
            star_scalar(NCValue(0, [0, 0]), NCValue(0, [0, 0, 0]))


class TestProduct:
    def test_identity_factor(self):
        B = sample_random("hermitian", 4, 5).matrix
        phi = sample_random("state", 4, 6)
        assert nc_diff(nc_value_of_product(B, np.eye(4), phi), nc_value(B, phi)) < 1e-12

    @given(seeds, dims)
    @settings(max_examples=30, deadline=None)
    def test_matches_direct_product(self, seed, dim):
        B = sample_random("hermitian", dim, seed).matrix
        C = sample_random("hermitian", dim, seed + 1).matrix
        phi = sample_random("state", dim, seed + 2)
        got = nc_value_of_product(B, C, phi)
        assert nc_diff(got, nc_value(B @ C, phi)) < 1e-10
        assert abs(got.f - star_scalar(nc_value(B, phi), nc_value(C, phi))) < 1e-10

    @given(seeds)
    @settings(max_examples=20, deadline=None)
    def test_eigenstate_reduction(self, seed):
        vals, vecs = np.linalg.eigh(sample_random("hermitian", 4, seed).matrix)
        B = vecs @ np.diag(vals) @ vecs.conj().T
        phi = vecs[:, 1]
        C = sample_random("hermitian", 4, seed + 1).matrix
        got = nc_value_of_product(B, C, phi)
        assert nc_diff(got, vals[1] * nc_value(C, phi)) < 1e-10
        # commutative: the value of CB agrees too
        assert nc_diff(nc_value_of_product(C, B, phi).__class__(
            star_scalar(nc_value(C, phi), nc_value(B, phi)), got.v), got) < 1e-10


class TestUncertainty:
    def test_eigenstate_zero(self):
        assert uncertainty(nc_value(SIGMA3, [0, 1])) == 0

    @pytest.mark.parametrize("r", [0.0, 0.3, 0.6, 1.0])
    def test_sigma3A(self, psi, r):
        val = nc_value(OBS["sigma3A"], psi(r, 2.2))
        assert abs(uncertainty(val) - (1 - r * r)) < 1e-12
        hand = (1 - r) ** 2 * (1 + r) / 2 + (1 + r) ** 2 * (1 - r) / 2
        assert abs(hand - (1 - r * r)) < 1e-15

    @given(seeds, dims)
    @settings(max_examples=30, deadline=None)
    def test_variance_identity(self, seed, dim):
        B = sample_random("hermitian", dim, seed).matrix
        phi = sample_random("state", dim, seed + 1)
        f = expectation_fn(B, phi)
        assert abs(uncertainty(nc_value(B, phi)) - (expectation_fn(B @ B, phi) - f * f)) < 1e-10


class TestTransport:
    def test_identity_process(self, psi):
        phi = psi(0.3, 1.0)
        a = nc_value(OBS["sigma3A"], phi)
        b = transport_under_local_process(a, OBS["sigma3A"].matrix, np.eye(4), phi)
        assert nc_diff(a, b) == 0

    @given(seeds)
    @settings(max_examples=25, deadline=None)
    def test_random_process_on_B(self, seed):
        phi = twoqubit.bell_like_state(0.6, 1.7)
        B = OBS["sigma3A"].matrix
        W = lift_local(sample_random("unitary", 2, seed).matrix, 1, [2, 2])
        a = nc_value(B, phi)
        moved = transport_under_local_process(a, B, W, phi)
        oracle = nc_value(B, W @ phi.amplitudes)
        assert nc_diff(moved, oracle) < 1e-12
        assert abs(moved.f - 0.6) < 1e-10
        assert np.max(np.abs(moved.v - W.conj() @ a.v)) < 1e-10
        assert abs(uncertainty(moved) - uncertainty(a)) < 1e-10

    def test_sigma1A_under_flip_of_B(self, psi):
        phi = psi(0.3, 2.0)
        B = OBS["sigma1A"].matrix
        W = lift_local(SIGMA1, 1, [2, 2])
        moved = transport_under_local_process(nc_value(B, phi), B, W, phi)
        assert abs(moved.f) < 1e-10

    def test_rejects_non_commuting_process(self, psi):
        phi = psi(0.3, 2.0)
        B = OBS["sigma1A"].matrix
        W = lift_local(SIGMA3, 0, [2, 2])
        with pytest.raises(ValueError, match="commute"):
            transport_under_local_process(nc_value(B, phi), B, W, phi)
