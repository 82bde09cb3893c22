"""Tests for the spectral/factorization primitives."""

import numpy as np
import pytest

from framekit import linalg
from framekit.errors import DimensionError, NumericError

# Golden value for the operator norm of [[1, 1], [0, 1]], frozen from the
# power-iteration oracle below (it converges to (1 + sqrt 5) / 2).
SHEAR_NORM = 1.618033988749895


def power_iteration_norm(m, iterations=200):
    """Independent operator-norm oracle: power iteration on m^T m."""
    m = np.asarray(m, dtype=float)
    v = np.ones(m.shape[1]) / np.sqrt(m.shape[1])
    for _ in range(iterations):
        w = m.T @ (m @ v)
        nw = np.linalg.norm(w)
        if nw == 0:
            return 0.0
        v = w / nw
    return float(np.linalg.norm(m @ v))


class TestHermitianEigenvalues:
    def test_identity(self):
        assert np.allclose(linalg.hermitian_eigenvalues(np.eye(3)), [1, 1, 1])

    def test_diagonal_sorted_ascending(self):
        got = linalg.hermitian_eigenvalues(np.diag([2.0, 1.0]))
        assert np.allclose(got, [1, 2])

    def test_offdiagonal_pair(self):
        # characteristic polynomial x^2 - 1 by hand
        got = linalg.hermitian_eigenvalues([[0.0, 1.0], [1.0, 0.0]])
        assert np.allclose(got, [-1, 1], atol=1e-12)

    def test_non_square_rejected(self):
        with pytest.raises(DimensionError):
            linalg.hermitian_eigenvalues(np.zeros((2, 3)))

    def test_non_finite_rejected(self):
        with pytest.raises(NumericError):
            linalg.hermitian_eigenvalues([[np.nan, 0.0], [0.0, 1.0]])

    def test_psd_eigenvalues_nonnegative(self):
        rng = np.random.default_rng(11)
        for _ in range(100):
            g = rng.standard_normal((5, 5))
            assert linalg.hermitian_eigenvalues(g @ g.T).min() >= -1e-10


class TestSingularValues:
    def test_identity(self):
        assert np.allclose(linalg.singular_values(np.eye(2)), [1, 1])

    def test_zero_rectangular(self):
        got = linalg.singular_values(np.zeros((2, 3)))
        assert got.shape == (2,)
        assert np.all(got == 0)

    def test_column_vector(self):
        got = linalg.singular_values([[3.0], [4.0]])
        assert np.allclose(got, [5.0])

    def test_matches_eigenvalues_of_gram(self):
        rng = np.random.default_rng(5)
        for _ in range(100):
            rows, cols = rng.integers(1, 9, size=2)
            m = rng.standard_normal((rows, cols))
            sv = linalg.singular_values(m)
            eig = linalg.hermitian_eigenvalues(m.T @ m)
            roots = np.sqrt(np.clip(eig, 0, None))[::-1][: len(sv)]
            assert np.allclose(sv, roots, atol=1e-9)


class TestOperatorNorm:
    def test_identity(self):
        assert linalg.operator_norm(np.eye(4)) == pytest.approx(1.0)

    def test_diagonal(self):
        assert linalg.operator_norm(np.diag([3.0, -7.0])) == pytest.approx(7.0)

    def test_shear_against_power_iteration(self):
        shear = [[1.0, 1.0], [0.0, 1.0]]
        oracle = power_iteration_norm(shear)
        assert abs(oracle - SHEAR_NORM) <= 1e-12
        assert linalg.operator_norm(shear) == pytest.approx(SHEAR_NORM, abs=1e-12)

    def test_zero_matrix(self):
        assert linalg.operator_norm(np.zeros((3, 2))) == 0.0

    def test_dominates_unit_vector_images(self):
        rng = np.random.default_rng(17)
        for _ in range(20):
            m = rng.standard_normal((4, 6))
            top = linalg.operator_norm(m)
            u = rng.standard_normal((100, 6))
            u /= np.linalg.norm(u, axis=1, keepdims=True)
            assert np.all(np.linalg.norm(u @ m.T, axis=1) <= top + 1e-9)


class TestOrthonormalize:
    def test_drops_duplicates(self):
        e1 = [1.0, 0.0, 0.0]
        e2 = [0.0, 1.0, 0.0]
        basis, rank = linalg.orthonormalize([e1, e1, e2])
        assert rank == 2
        assert np.allclose(basis, np.eye(3)[:, :2])

    def test_normalizes_single_vector(self):
        basis, rank = linalg.orthonormalize([[1.0, 1.0]])
        assert rank == 1
        assert np.allclose(np.abs(basis[:, 0]), [1 / np.sqrt(2)] * 2)

    def test_generic_vectors_fill_the_space(self):
        rng = np.random.default_rng(3)
        vecs = rng.standard_normal((5, 3))
        stacked_rank = int(np.sum(linalg.singular_values(vecs) > 1e-10))
        basis, rank = linalg.orthonormalize(vecs)
        assert rank == stacked_rank == 3

    def test_basis_is_orthonormal_to_spec_tolerance(self):
        rng = np.random.default_rng(23)
        for _ in range(100):
            count = int(rng.integers(1, 7))
            vecs = rng.standard_normal((count, 4))
            if rng.random() < 0.4 and count > 1:
                vecs[-1] = vecs[0]  # force a dependent vector
            basis, rank = linalg.orthonormalize(vecs)
            defect = np.max(np.abs(basis.T @ basis - np.eye(rank)))
            assert defect <= 1e-12

    def test_empty_input(self):
        basis, rank = linalg.orthonormalize([], dim=3)
        assert rank == 0
        assert basis.shape == (3, 0)

    def test_bad_tolerance(self):
        with pytest.raises(ValueError):
            linalg.orthonormalize([[1.0, 0.0]], tol=0.0)
