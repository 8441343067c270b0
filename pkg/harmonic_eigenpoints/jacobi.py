"""
Cyclic Jacobi eigensolver for real symmetric matrices.

Reference eigensolver for the quadratic (d = 2) case; it shares no code with
the sphere solver.
"""

from __future__ import annotations

import numpy as np
from numpy.typing import ArrayLike, NDArray

from harmonic_eigenpoints.errors import ArgumentError, DimensionError


def jacobi_eigh(
    matrix: ArrayLike,
    tol: float = 1e-15,
    max_sweeps: int = 64,
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """
    Eigenvalues (ascending) and orthonormal eigenvectors (columns) of a symmetric matrix.

    Each sweep annihilates every off-diagonal pair (p, q) once with a plane
    rotation; sweeps stop when the off-diagonal Frobenius mass drops below
    tol times the matrix norm.
    """
    a = np.array(matrix, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {a.shape}")
    if not np.allclose(a, a.T, rtol=0.0, atol=1e-12 * max(1.0, np.abs(a).max(initial=0.0))):
        raise ArgumentError("matrix is not symmetric")

    n = a.shape[0]
    vectors = np.eye(n)
    scale = max(np.linalg.norm(a), np.finfo(float).tiny)

    for _ in range(max_sweeps):
        off = np.sqrt(np.sum(np.triu(a, 1) ** 2) * 2.0)
        if off <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                if a[p, q] == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * a[p, q])
                t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1.0)) if theta != 0.0 else 1.0
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                rotation = np.eye(n)
                rotation[p, p] = c
                rotation[q, q] = c
                rotation[p, q] = s
                rotation[q, p] = -s
                a = rotation.T @ a @ rotation
                vectors = vectors @ rotation

    eigenvalues = np.diag(a).copy()
    order = np.argsort(eigenvalues)
    return eigenvalues[order], vectors[:, order]
