import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lsrseg import linalg


class TestAsMatrix:
    def test_rejects_nan(self):
        with pytest.raises(ValueError, match="non-finite"):
            linalg.as_matrix([[1.0, np.nan], [0.0, 1.0]])

    def test_rejects_inf(self):
        with pytest.raises(ValueError, match="non-finite"):
            linalg.as_matrix([[np.inf, 0.0]])

    def test_rejects_empty(self):
        with pytest.raises(linalg.DimensionMismatch):
            linalg.as_matrix(np.zeros((0, 3)))

    def test_rejects_scalar(self):
        with pytest.raises(linalg.DimensionMismatch):
            linalg.as_matrix(3.0)

    def test_column_major_layout(self):
        m = linalg.as_matrix([[1.0, 2.0], [3.0, 4.0]])
        assert m.flags["F_CONTIGUOUS"]


class TestSolveSpd:
    def test_identity(self):
        b = np.arange(6.0).reshape(3, 2)
        assert np.array_equal(linalg.solve_spd(np.eye(3), b), b)

    def test_scalar_multiple(self):
        out = linalg.solve_spd(2.0 * np.eye(2), np.eye(2))
        assert np.allclose(out, 0.5 * np.eye(2), atol=1e-15)

    def test_random_spd_residual(self):
        rng = np.random.default_rng(7)
        g = rng.standard_normal((5, 5))
        a = g.T @ g + np.eye(5)
        b = rng.standard_normal((5, 3))
        s = linalg.solve_spd(a, b)
        assert np.linalg.norm(a @ s - b) <= 1e-10 * np.linalg.norm(b)

    def test_vector_rhs(self):
        rng = np.random.default_rng(3)
        g = rng.standard_normal((4, 4))
        a = g.T @ g + np.eye(4)
        b = rng.standard_normal(4)
        s = linalg.solve_spd(a, b)
        assert s.shape == (4,)
        assert np.linalg.norm(a @ s - b) <= 1e-10 * np.linalg.norm(b)

    def test_not_positive_definite(self):
        with pytest.raises(linalg.NotPositiveDefinite):
            linalg.solve_spd(np.diag([1.0, -1.0]), np.eye(2))

    def test_dimension_mismatch(self):
        with pytest.raises(linalg.DimensionMismatch):
            linalg.solve_spd(np.eye(3), np.eye(2))

    def test_rejects_asymmetric(self):
        a = np.array([[1.0, 0.5], [0.0, 1.0]])
        with pytest.raises(ValueError, match="asymmetry"):
            linalg.solve_spd(a, np.eye(2))

    def test_tolerates_float_drift(self):
        a = np.array([[2.0, 1.0], [1.0 + 1e-13, 2.0]])
        s = linalg.solve_spd(a, np.eye(2))
        assert np.allclose(a @ s, np.eye(2), atol=1e-10)

    @settings(max_examples=40, deadline=None)
    @given(seed=st.integers(0, 2**32 - 1), n=st.integers(1, 12))
    def test_reconstruction_property(self, seed, n):
        rng = np.random.default_rng(seed)
        g = rng.standard_normal((n, n))
        a = g.T @ g + 1e-6 * np.eye(n)
        b = rng.standard_normal((n, 2))
        s = linalg.solve_spd(a, b)
        assert np.linalg.norm(a @ s - b) <= 1e-10 * max(np.linalg.norm(b), 1e-30)


class TestSymEigen:
    def test_diagonal(self):
        eig = linalg.sym_eigen(np.diag([3.0, 1.0, 2.0]))
        assert np.allclose(eig.values, [1.0, 2.0, 3.0])
        assert np.allclose(np.abs(eig.vectors), np.eye(3)[:, [1, 2, 0]], atol=1e-12)

    def test_known_two_by_two(self):
        eig = linalg.sym_eigen(np.array([[0.0, 1.0], [1.0, 0.0]]))
        assert np.allclose(eig.values, [-1.0, 1.0], atol=1e-14)

    def test_values_ascending_and_reconstruction(self):
        rng = np.random.default_rng(11)
        a = rng.standard_normal((8, 8))
        a = (a + a.T) / 2
        eig = linalg.sym_eigen(a)
        assert np.all(np.diff(eig.values) >= 0)
        assert np.linalg.norm(a @ eig.vectors - eig.vectors * eig.values) <= 1e-8

    @settings(max_examples=25, deadline=None)
    @given(seed=st.integers(0, 2**32 - 1), n=st.integers(2, 40))
    def test_orthonormal_vectors(self, seed, n):
        rng = np.random.default_rng(seed)
        a = rng.standard_normal((n, n))
        a = (a + a.T) / 2
        eig = linalg.sym_eigen(a)
        assert np.linalg.norm(eig.vectors.T @ eig.vectors - np.eye(n)) <= 1e-8

    def test_orthonormal_large(self):
        rng = np.random.default_rng(0)
        a = rng.standard_normal((200, 200))
        a = (a + a.T) / 2
        eig = linalg.sym_eigen(a)
        assert np.linalg.norm(eig.vectors.T @ eig.vectors - np.eye(200)) <= 1e-8


class TestPseudoInverse:
    def test_identity(self):
        assert np.allclose(linalg.pseudo_inverse(np.eye(4)), np.eye(4), atol=1e-14)

    def test_scalar(self):
        assert np.allclose(linalg.pseudo_inverse([[2.0]]), [[0.5]], atol=1e-15)

    def test_penrose_conditions_rank_deficient(self):
        a = np.array([[1.0, 2.0], [0.0, 0.0]])
        p = linalg.pseudo_inverse(a)
        assert np.linalg.norm(a @ p @ a - a) <= 1e-8
        assert np.linalg.norm(p @ a @ p - p) <= 1e-8
        assert np.linalg.norm(a @ p - (a @ p).T) <= 1e-8
        assert np.linalg.norm(p @ a - (p @ a).T) <= 1e-8

    @settings(max_examples=25, deadline=None)
    @given(seed=st.integers(0, 2**32 - 1))
    def test_full_column_rank_normal_equations(self, seed):
        rng = np.random.default_rng(seed)
        a = rng.standard_normal((8, 4))
        expected = np.linalg.solve(a.T @ a, a.T)
        assert np.max(np.abs(linalg.pseudo_inverse(a) - expected)) <= 1e-8


class TestRankHelpers:
    def test_singular_values_descending(self):
        s = linalg.singular_values(np.diag([1.0, 3.0, 2.0]))
        assert np.allclose(s, [3.0, 2.0, 1.0])

    def test_rank_with_cutoff(self):
        a = np.diag([1.0, 1e-14, 0.0])
        assert linalg.matrix_rank(a) == 1

    def test_rank_zero_matrix(self):
        assert linalg.matrix_rank(np.zeros((3, 3))) == 0
