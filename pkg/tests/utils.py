"""Test utilities: CLI runner, seeded fixtures and assertion helpers."""

import json
import subprocess
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any

import numpy as np

from harmonic_eigenpoints.poly_core import HomogeneousPolynomial
from harmonic_eigenpoints.sphere_solver import SolveReport


# Repository root, so `python -m harmonic_eigenpoints` resolves without installing
ROOT_DIR = Path(__file__).parent.parent


@dataclass
class CliResult:
    exit_code: int
    stdout: str
    stderr: str


def run_cli(*args: str, timeout: int = 600) -> CliResult:
    """
    Run the CLI in a subprocess and capture its output.

    Args:
        args: Command-line arguments after the program name
        timeout: Seconds before the run is aborted

    Returns:
        Exit code, stdout and stderr of the run
    """
    result = subprocess.run(
        [sys.executable, "-m", "harmonic_eigenpoints", *args],
        cwd=ROOT_DIR,
        capture_output=True,
        text=True,
        timeout=timeout,
    )
    return CliResult(result.returncode, result.stdout, result.stderr)


def write_json(path: Path, document: Any) -> Path:
    """Write a pydantic document or plain dict as JSON."""
    if hasattr(document, "model_dump_json"):
        path.write_text(document.model_dump_json(indent=2))
    else:
        path.write_text(json.dumps(document))
    return path


def random_unit_vectors(n: int, count: int, seed: int) -> np.ndarray:
    """Seeded Gaussian directions normalized to the sphere."""
    rng = np.random.default_rng(seed)
    points = rng.standard_normal((count, n))
    return points / np.linalg.norm(points, axis=1, keepdims=True)


def random_rotation(n: int, seed: int) -> np.ndarray:
    """Seeded orthogonal matrix with determinant +1."""
    rng = np.random.default_rng(seed)
    q, r = np.linalg.qr(rng.standard_normal((n, n)))
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q


def quadratic_from_matrix(matrix: np.ndarray) -> HomogeneousPolynomial:
    """x^T S x as a polynomial."""
    n = matrix.shape[0]
    terms = {}
    for i in range(n):
        for j in range(i, n):
            exponents = [0] * n
            exponents[i] += 1
            exponents[j] += 1
            terms[tuple(exponents)] = matrix[i, j] if i == j else 2.0 * matrix[i, j]
    return HomogeneousPolynomial(n, 2, terms)


def random_traceless_matrix(n: int, seed: int) -> np.ndarray:
    """Symmetric traceless matrix with eigenvalues at least 1 apart, in a random frame."""
    rng = np.random.default_rng(seed)
    eigenvalues = np.arange(n, dtype=float) * 1.5 + rng.uniform(0.0, 0.5, size=n)
    eigenvalues -= eigenvalues.mean()
    q = random_rotation(n, seed + 1000)
    return q @ np.diag(eigenvalues) @ q.T


def finite_difference_gradient(f: HomogeneousPolynomial, x: np.ndarray, h: float = 1e-5) -> np.ndarray:
    """Central differences of f at x."""
    gradient = np.zeros_like(x)
    for i in range(len(x)):
        step = np.zeros_like(x)
        step[i] = h
        gradient[i] = (f.evaluate(x + step) - f.evaluate(x - step)) / (2.0 * h)
    return gradient


def finite_difference_hessian(f: HomogeneousPolynomial, x: np.ndarray, h: float = 1e-5) -> np.ndarray:
    """Central differences of the analytic gradient of f at x."""
    n = len(x)
    hessian = np.zeros((n, n))
    for i in range(n):
        step = np.zeros(n)
        step[i] = h
        hessian[:, i] = (f.gradient_at(x + step) - f.gradient_at(x - step)) / (2.0 * h)
    return hessian


def angular_distance(x: np.ndarray, y: np.ndarray) -> float:
    """Angle between two unit vectors, from the chord (accurate near zero)."""
    chord = float(np.linalg.norm(np.asarray(x) - np.asarray(y)))
    return 2.0 * float(np.arcsin(min(chord / 2.0, 1.0)))


def assert_certified(report: SolveReport, expected_count: int) -> None:
    """Assert that the report certifies exactly expected_count critical points."""
    assert report.certified, f"Expected a certified report but got: {report.diagnostics}"
    assert report.found_count == expected_count, (
        f"Expected {expected_count} critical points but found {report.found_count}"
    )
    assert report.expected_count == expected_count


def assert_uncertified(report: SolveReport, diagnostics_contain: str | None = None) -> None:
    """Assert that the report is not certified."""
    assert not report.certified, f"Expected an uncertified report: {report.diagnostics}"
    if diagnostics_contain:
        assert diagnostics_contain.lower() in report.diagnostics.lower(), (
            f"Expected diagnostics to contain '{diagnostics_contain}' but got: {report.diagnostics}"
        )


def random_sparse_polynomial(n: int, d: int, n_terms: int, seed: int) -> HomogeneousPolynomial:
    """Seeded degree-d polynomial in n variables with up to n_terms random monomials."""
    rng = np.random.default_rng(seed)
    terms = {}
    for _ in range(n_terms):
        exponents = np.bincount(rng.integers(0, n, size=d), minlength=n)
        terms[tuple(int(e) for e in exponents)] = float(rng.uniform(-1.0, 1.0))
    return HomogeneousPolynomial(n, d, terms)
