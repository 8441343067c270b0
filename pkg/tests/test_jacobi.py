"""Tests for the cyclic Jacobi eigensolver."""

import numpy as np
import pytest

from harmonic_eigenpoints.errors import ArgumentError, DimensionError
from harmonic_eigenpoints.jacobi import jacobi_eigh
from tests.utils import random_traceless_matrix


class TestJacobiEigh:
    """Tests for eigenvalues and eigenvectors of symmetric matrices."""

    @pytest.mark.parametrize("n", [2, 3, 5, 8])
    def test_matches_lapack(self, n):
        """Eigenvalues agree with numpy's symmetric solver."""
        rng = np.random.default_rng(n)
        a = rng.standard_normal((n, n))
        matrix = a + a.T
        eigenvalues, _ = jacobi_eigh(matrix)
        assert np.allclose(eigenvalues, np.linalg.eigvalsh(matrix), atol=1e-12)

    def test_decomposition(self):
        """A V = V diag(w) with orthonormal V."""
        matrix = random_traceless_matrix(5, seed=11)
        eigenvalues, vectors = jacobi_eigh(matrix)
        assert np.allclose(vectors.T @ vectors, np.eye(5), atol=1e-13)
        assert np.allclose(matrix @ vectors, vectors * eigenvalues, atol=1e-12)

    def test_diagonal_input(self):
        """A diagonal matrix is already converged."""
        eigenvalues, vectors = jacobi_eigh(np.diag([3.0, 1.0]))
        assert eigenvalues.tolist() == [1.0, 3.0]
        assert np.allclose(np.abs(vectors), [[0.0, 1.0], [1.0, 0.0]])

    def test_non_square(self):
        """Rectangular input is refused."""
        with pytest.raises(DimensionError):
            jacobi_eigh(np.ones((2, 3)))

    def test_non_symmetric(self):
        """Asymmetric input is refused."""
        with pytest.raises(ArgumentError):
            jacobi_eigh(np.array([[1.0, 2.0], [0.0, 1.0]]))
