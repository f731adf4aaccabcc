import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from spectralcut import linalg
from spectralcut.errors import KOutOfRange, NonFiniteEntry, NonPositiveWeight, NotSquare, NotSymmetric


def random_symmetric(seed, n):
    a = np.random.default_rng(seed).standard_normal((n, n))
    return a + a.T


class TestEigh:
    def test_diagonal(self):
        dec = linalg.eigh(np.diag([3.0, 1.0, 2.0]), 3)
        np.testing.assert_array_equal(dec.values, [3.0, 2.0, 1.0])
        np.testing.assert_array_equal(dec.vectors, np.eye(3)[:, [0, 2, 1]])

    def test_two_by_two_closed_form(self):
        dec = linalg.eigh([[0.0, 1.0], [1.0, 0.0]], 2)
        np.testing.assert_allclose(dec.values, [1.0, -1.0], atol=1e-15)
        r = 1 / np.sqrt(2)
        np.testing.assert_allclose(dec.vectors, [[r, r], [r, -r]], atol=1e-15)

    def test_random_reconstruction(self):
        m = random_symmetric(6, 6)
        dec = linalg.eigh(m)
        recon = (dec.vectors * dec.values) @ dec.vectors.T
        assert np.linalg.norm(m - recon) <= 1e-9 * np.linalg.norm(m)

    @pytest.mark.parametrize("seed", range(5))
    def test_matches_lapack(self, seed):
        m = random_symmetric(seed, 9)
        dec = linalg.eigh(m)
        np.testing.assert_allclose(dec.values, np.linalg.eigvalsh(m)[::-1], atol=1e-12)

    def test_residuals_and_orthonormality(self):
        m = random_symmetric(11, 10)
        dec = linalg.eigh(m, 4)
        scale = np.linalg.norm(m)
        for lam, u in zip(dec.values, dec.vectors.T):
            assert np.linalg.norm(m @ u - lam * u) <= 1e-9 * scale
        np.testing.assert_allclose(dec.vectors.T @ dec.vectors, np.eye(4), atol=1e-10)
        assert np.all(np.diff(dec.values) <= 0)

    def test_sign_convention(self):
        dec = linalg.eigh(random_symmetric(3, 7))
        for col in dec.vectors.T:
            first = col[np.flatnonzero(np.abs(col) > 1e-12)[0]]
            assert first > 0

    def test_trace_identity(self):
        m = random_symmetric(4, 8)
        assert abs(linalg.eigh(m).values.sum() - np.trace(m)) <= 1e-9 * np.linalg.norm(m)

    def test_repeated_eigenvalues_compare_projectors(self):
        q, _ = np.linalg.qr(np.random.default_rng(0).standard_normal((5, 5)))
        m = q @ np.diag([2.0, 2.0, 1.0, 0.0, -1.0]) @ q.T
        dec = linalg.eigh(m, 2)
        np.testing.assert_allclose(dec.values, [2.0, 2.0], atol=1e-12)
        np.testing.assert_allclose(dec.vectors @ dec.vectors.T, q[:, :2] @ q[:, :2].T, atol=1e-10)

    def test_zero_and_scalar(self):
        dec = linalg.eigh(np.zeros((3, 3)))
        np.testing.assert_array_equal(dec.values, 0.0)
        assert linalg.eigh([[5.0]]).values[0] == 5.0

    def test_deterministic_bits(self):
        m = random_symmetric(9, 12)
        a, b = linalg.eigh(m), linalg.eigh(m)
        assert a.values.tobytes() == b.values.tobytes()
        assert a.vectors.tobytes() == b.vectors.tobytes()

    def test_errors(self):
        with pytest.raises(NotSquare):
            linalg.eigh(np.ones((2, 3)))
        with pytest.raises(NotSymmetric):
            linalg.eigh([[0.0, 1.0], [0.0, 0.0]])
        with pytest.raises(KOutOfRange):
            linalg.eigh(np.eye(3), 4)
        with pytest.raises(KOutOfRange):
            linalg.eigh(np.eye(3), 0)
        with pytest.raises(NonFiniteEntry):
            linalg.eigh([[np.nan]])

    def test_tiny_asymmetry_tolerated(self):
        m = random_symmetric(1, 4)
        m[0, 1] += 1e-14
        linalg.eigh(m)

    @settings(max_examples=40, deadline=None)
    @given(arrays(np.float64, (5, 5), elements=st.floats(-10, 10)))
    def test_property_spectrum(self, a):
        m = a + a.T
        dec = linalg.eigh(m)
        scale = max(np.linalg.norm(m), 1e-300)
        recon = (dec.vectors * dec.values) @ dec.vectors.T
        assert np.linalg.norm(m - recon) <= 1e-9 * scale + 1e-300
        np.testing.assert_allclose(dec.vectors.T @ dec.vectors, np.eye(5), atol=1e-10)


class TestSvd:
    def test_diagonal(self):
        np.testing.assert_allclose(linalg.svd([[3.0, 0.0], [0.0, 2.0]], 2).sigma, [3.0, 2.0])

    def test_rank_one(self):
        u = np.array([2.0, 0.0, 0.0])
        v = np.array([0.0, 3.0])
        s = linalg.svd(np.outer(u, v), 1)
        np.testing.assert_allclose(s.sigma, [6.0])

    def test_gram_eigenvalue_oracle(self):
        a = np.random.default_rng(5).random((6, 4))
        s = linalg.svd(a, 4)
        gram = np.linalg.eigvalsh(a.T @ a)[::-1]
        np.testing.assert_allclose(s.sigma**2, gram, rtol=1e-9)

    @pytest.mark.parametrize("shape", [(6, 4), (4, 6), (5, 5), (1, 3), (3, 1)])
    def test_invariants(self, shape):
        a = np.random.default_rng(sum(shape)).random(shape)
        k = min(shape)
        s = linalg.svd(a, k)
        fro = np.linalg.norm(a)
        assert np.all(np.diff(s.sigma) <= 0) and np.all(s.sigma >= 0)
        np.testing.assert_allclose(s.u.T @ s.u, np.eye(k), atol=1e-10)
        np.testing.assert_allclose(s.v.T @ s.v, np.eye(k), atol=1e-10)
        for j in range(k):
            assert np.linalg.norm(a @ s.v[:, j] - s.sigma[j] * s.u[:, j]) <= 1e-9 * fro
        np.testing.assert_allclose(s.sigma, np.linalg.svd(a, compute_uv=False)[:k], atol=1e-12)

    def test_rank_deficient_completion(self):
        a = np.outer([1.0, 2.0, 3.0, 4.0], [1.0, 1.0, 0.0])
        s = linalg.svd(a, 3)
        assert s.sigma[1] == 0.0 and s.sigma[2] == 0.0
        np.testing.assert_allclose(s.u.T @ s.u, np.eye(3), atol=1e-10)
        np.testing.assert_allclose(s.v.T @ s.v, np.eye(3), atol=1e-10)

    def test_zero_matrix(self):
        s = linalg.svd(np.zeros((3, 2)))
        np.testing.assert_array_equal(s.sigma, 0.0)
        np.testing.assert_allclose(s.u.T @ s.u, np.eye(2), atol=1e-12)

    def test_sign_convention_on_u(self):
        s = linalg.svd(np.random.default_rng(2).random((5, 3)))
        for col in s.u.T:
            assert col[np.flatnonzero(np.abs(col) > 1e-12)[0]] > 0

    def test_k_out_of_range(self):
        with pytest.raises(KOutOfRange):
            linalg.svd(np.ones((3, 2)), 3)


class TestTruncation:
    def test_full_rank_reproduces_input(self):
        a = np.random.default_rng(0).random((4, 3))
        np.testing.assert_allclose(linalg.truncated_reconstruction(linalg.svd(a)), a, atol=1e-9)

    def test_keep_top_direction(self):
        out = linalg.truncated_reconstruction(linalg.svd(np.diag([3.0, 2.0]), 1))
        np.testing.assert_allclose(out, [[3.0, 0.0], [0.0, 0.0]], atol=1e-15)

    def test_beats_random_rank_two_competitors(self):
        rng = np.random.default_rng(17)
        a = rng.random((5, 3))
        err = np.linalg.norm(a - linalg.truncated_reconstruction(linalg.svd(a, 2)))
        for _ in range(20):
            competitor = rng.standard_normal((5, 2)) @ rng.standard_normal((2, 3))
            assert err <= np.linalg.norm(a - competitor)
        # Eckart-Young: the error is the discarded singular value
        assert err == pytest.approx(np.linalg.svd(a, compute_uv=False)[2], abs=1e-12)


class TestScaleSymmetric:
    def test_unit_weights(self):
        m = random_symmetric(0, 4)
        np.testing.assert_array_equal(linalg.scale_symmetric(m, np.ones(4)), m)

    def test_uniform_scaling(self):
        out = linalg.scale_symmetric([[0.0, 4.0], [4.0, 0.0]], [4.0, 4.0])
        np.testing.assert_array_equal(out, [[0.0, 1.0], [1.0, 0.0]])

    def test_entrywise(self):
        rng = np.random.default_rng(8)
        m = random_symmetric(8, 6)
        phi = rng.uniform(0.1, 5.0, 6)
        out = linalg.scale_symmetric(m, phi)
        assert np.max(np.abs(out - out.T)) <= 1e-14
        for i in range(6):
            for j in range(6):
                assert out[i, j] == pytest.approx(m[i, j] / np.sqrt(phi[i] * phi[j]), rel=1e-15)

    def test_rejects_nonpositive(self):
        with pytest.raises(NonPositiveWeight):
            linalg.scale_symmetric(np.eye(2), [1.0, 0.0])
