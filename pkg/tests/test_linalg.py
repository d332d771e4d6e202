import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polyframe import (
    DegeneratePair,
    AntipodalPair,
    direct_rotation,
    gram_schmidt_pair,
    inner,
    qr_sign_corrected,
    svd_2x2,
)

RT2 = np.sqrt(2.0)


def orthonormal_defect(a, b) -> float:
    return max(
        abs(np.linalg.norm(a) - 1.0),
        abs(np.linalg.norm(b) - 1.0),
        abs(inner(a, b)),
    )


class TestGramSchmidtPair:
    def test_already_orthogonal(self):
        a, b = gram_schmidt_pair(np.array([1.0, 0, 0]), np.array([0.0, 2, 0]))
        assert np.allclose(a, [1, 0, 0], atol=1e-15)
        assert np.allclose(b, [0, 1, 0], atol=1e-15)

    def test_oblique_pair(self):
        u = (3.0 / RT2) * np.array([1.0, 1.0, 0.0])
        v = np.array([1.0, 0.0, 0.0])
        a, b = gram_schmidt_pair(u, v)
        assert np.allclose(a, [1 / RT2, 1 / RT2, 0], atol=1e-14)
        assert np.allclose(b, [1 / RT2, -1 / RT2, 0], atol=1e-14)

    def test_parallel_raises(self):
        with pytest.raises(DegeneratePair):
            gram_schmidt_pair(np.array([1.0, 1, 0]), np.array([2.0, 2, 0]))

    def test_zero_first_raises(self):
        with pytest.raises(DegeneratePair):
            gram_schmidt_pair(np.zeros(3), np.array([1.0, 0, 0]))

    def test_nearly_parallel_raises(self):
        u = np.array([1.0, 0.0, 0.0])
        v = u + 1e-12 * np.array([0.0, 1.0, 0.0])
        with pytest.raises(DegeneratePair):
            gram_schmidt_pair(u, v)

    def test_random_real_and_complex_orthonormal(self):
        rng = np.random.default_rng(42)
        for _ in range(300):
            n = int(rng.integers(3, 30))
            u = rng.standard_normal(n)
            v = rng.standard_normal(n)
            a, b = gram_schmidt_pair(u, v)
            assert orthonormal_defect(a, b) < 1e-12
            uc = rng.standard_normal(n) + 1j * rng.standard_normal(n)
            vc = rng.standard_normal(n) + 1j * rng.standard_normal(n)
            a, b = gram_schmidt_pair(uc, vc)
            assert orthonormal_defect(a, b) < 1e-12

    def test_span_preserved(self):
        rng = np.random.default_rng(5)
        u = rng.standard_normal(8)
        v = rng.standard_normal(8)
        a, b = gram_schmidt_pair(u, v)
        # u and v must be combinations of a and b
        for w in (u, v):
            resid = w - inner(a, w) * a - inner(b, w) * b
            assert np.linalg.norm(resid) < 1e-12 * np.linalg.norm(w)


class TestQrSignCorrected:
    def test_identity_passthrough(self):
        a = np.eye(4)[:, :2]
        q = qr_sign_corrected(a)
        assert np.allclose(q, a, atol=1e-15)

    def test_negative_first_column(self):
        a = np.column_stack([[-1.0, 0.0], [0.0, 1.0]])
        q = qr_sign_corrected(np.vstack([a, np.zeros((1, 2))]))
        # Gram-Schmidt of (-1, 0, 0) is itself; no sign flip is wanted
        assert np.allclose(q[:, 0], [-1, 0, 0], atol=1e-15)
        assert np.allclose(q[:, 1], [0, 1, 0], atol=1e-15)

    def test_agrees_with_gram_schmidt(self):
        rng = np.random.default_rng(100)
        for _ in range(200):
            n = int(rng.integers(3, 40))
            u = rng.standard_normal(n)
            v = rng.standard_normal(n)
            a, b = gram_schmidt_pair(u, v)
            q = qr_sign_corrected(np.column_stack([u, v]))
            assert np.max(np.abs(q[:, 0] - a)) < 1e-12
            assert np.max(np.abs(q[:, 1] - b)) < 1e-12

    def test_agrees_with_gram_schmidt_complex(self):
        rng = np.random.default_rng(101)
        for _ in range(100):
            n = int(rng.integers(3, 25))
            u = rng.standard_normal(n) + 1j * rng.standard_normal(n)
            v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
            a, b = gram_schmidt_pair(u, v)
            q = qr_sign_corrected(np.column_stack([u, v]))
            assert np.max(np.abs(q[:, 0] - a)) < 1e-10
            assert np.max(np.abs(q[:, 1] - b)) < 1e-10

    def test_rank_deficient_raises(self):
        u = np.array([1.0, 2.0, 3.0])
        with pytest.raises(DegeneratePair):
            qr_sign_corrected(np.column_stack([u, 2 * u]))


class TestDirectRotation:
    def test_endpoints(self):
        rng = np.random.default_rng(7)
        u = rng.standard_normal(6)
        v = rng.standard_normal(6)
        a, b = gram_schmidt_pair(u, v)
        c = (a + b) / np.linalg.norm(a + b)
        assert np.allclose(direct_rotation(a, c, 0.0), a, atol=1e-15)
        assert np.max(np.abs(direct_rotation(a, c, 1.0) - c)) < 1e-12

    def test_quarter_turn_midpoint(self):
        a = np.array([1.0, 0.0])
        b = np.array([0.0, 1.0])
        mid = direct_rotation(a, b, 0.5)
        assert np.allclose(mid, [1 / RT2, 1 / RT2], atol=1e-14)

    def test_same_vector_fixed(self):
        a = np.array([0.0, 0.0, 1.0])
        assert np.allclose(direct_rotation(a, a, 0.7), a, atol=1e-15)

    def test_antipodal_raises(self):
        a = np.array([1.0, 0.0, 0.0])
        with pytest.raises(AntipodalPair):
            direct_rotation(a, -a, 0.5)

    def test_unit_speed_angle(self):
        rng = np.random.default_rng(9)
        for _ in range(100):
            n = int(rng.integers(3, 12))
            a, b = gram_schmidt_pair(rng.standard_normal(n), rng.standard_normal(n))
            target = np.cos(1.1) * a + np.sin(1.1) * b
            for t in (0.25, 0.5, 0.75):
                p = direct_rotation(a, target, t)
                assert abs(np.linalg.norm(p) - 1.0) < 1e-12
                ang = np.arccos(np.clip(inner(a, p), -1, 1))
                assert abs(ang - t * 1.1) < 1e-10


class TestSvd2x2:
    def test_identity(self):
        res = svd_2x2(np.eye(2))
        assert np.allclose(res.sigma, [1, 1], atol=1e-15)

    def test_diagonal_with_sign(self):
        res = svd_2x2(np.diag([3.0, -2.0]))
        assert np.allclose(res.sigma, [3, 2], atol=1e-14)
        m = res.u @ np.diag(res.sigma) @ res.v.conj().T
        assert np.allclose(m, np.diag([3.0, -2.0]), atol=1e-13)

    def test_zero_matrix(self):
        res = svd_2x2(np.zeros((2, 2)))
        assert np.allclose(res.sigma, [0, 0])
        assert np.allclose(res.u, np.eye(2))
        assert np.allclose(res.v, np.eye(2))

    def test_nilpotent(self):
        m = np.array([[0.0, 1.0], [0.0, 0.0]])
        res = svd_2x2(m)
        assert np.allclose(res.sigma, [1, 0], atol=1e-15)
        assert np.allclose(res.u @ np.diag(res.sigma) @ res.v.conj().T, m, atol=1e-14)

    @pytest.mark.parametrize("cplx", [False, True])
    def test_random_reconstruction(self, cplx):
        rng = np.random.default_rng(11 if cplx else 10)
        worst = 0.0
        for k in range(2000):
            m = rng.standard_normal((2, 2))
            if cplx:
                m = m + 1j * rng.standard_normal((2, 2))
            if k % 5 == 0:
                m[1] = m[0] * (1 + 1e-13)  # nearly rank one
            res = svd_2x2(m)
            assert res.sigma[0] >= res.sigma[1] >= 0.0
            back = res.u @ np.diag(res.sigma) @ res.v.conj().T
            worst = max(worst, np.max(np.abs(back - m)))
            for f in (res.u, res.v):
                assert np.max(np.abs(f.conj().T @ f - np.eye(2))) < 1e-12
        assert worst < 1e-12

    def test_matches_lapack_singular_values(self):
        rng = np.random.default_rng(12)
        for _ in range(500):
            m = rng.standard_normal((2, 2)) * 10.0 ** rng.integers(-6, 6)
            assert np.allclose(svd_2x2(m).sigma, np.linalg.svd(m, compute_uv=False),
                               rtol=1e-9, atol=1e-12)

    def test_deterministic_phases(self):
        rng = np.random.default_rng(13)
        m = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        r1 = svd_2x2(m)
        r2 = svd_2x2(m.copy())
        assert np.array_equal(r1.u, r2.u)
        assert np.array_equal(r1.v, r2.v)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.floats(-1e3, 1e3), min_size=4, max_size=4))
def test_svd_2x2_reconstructs_any_finite_matrix(vals):
    m = np.array(vals).reshape(2, 2)
    res = svd_2x2(m)
    scale = max(1.0, np.max(np.abs(m)))
    assert np.max(np.abs(res.u @ np.diag(res.sigma) @ res.v.conj().T - m)) < 1e-11 * scale


@settings(max_examples=60, deadline=None)
@given(
    st.integers(3, 20),
    st.integers(0, 2**31 - 1),
)
def test_gram_schmidt_orthonormal_on_gaussian_pairs(n, seed):
    rng = np.random.default_rng(seed)
    a, b = gram_schmidt_pair(rng.standard_normal(n), rng.standard_normal(n))
    assert orthonormal_defect(a, b) < 1e-12
