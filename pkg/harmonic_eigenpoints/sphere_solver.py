"""
Enumerate and certify the critical points of a homogeneous polynomial on the sphere.

SphereSolver runs a batch of seeded starts through Riemannian Newton on S^{n-1},
clusters the converged points, polishes one representative per cluster and
classifies it by the spectrum of the projected Hessian

    H_x = P_x (hess f(x) - lambda_L I) P_x,  P_x = I - x x^T,  lambda_L = <grad f(x), x>.

Completeness is certified against the generic count 2 m_{d,n}; the solver is a
verifier for constructed inputs, not a complete real solver.
"""

from __future__ import annotations

import logging
import math
from collections import Counter
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy import linalg
from scipy.cluster.hierarchy import fcluster, linkage

from harmonic_eigenpoints.config import SolverConfig
from harmonic_eigenpoints.errors import (
    ArgumentError,
    CertificationError,
    DegenerateCriticalPointError,
    NormalizationError,
)
from harmonic_eigenpoints.log import create_default_logger
from harmonic_eigenpoints.poly_core import HomogeneousPolynomial
from harmonic_eigenpoints.schemas import CriticalPointDocument, SolveReportDocument
from harmonic_eigenpoints.tensor_bridge import (
    EigenPair,
    SymmetricTensor,
    eigen_residual,
    fixed_point_map,
)

MAX_STEP = 0.5
FALLBACK_STEP = 0.1
SINGULAR_TOL = 1e-10
POLISH_STEPS = 3
CONTINUUM_THRESHOLD = 10
CERTIFY_RESIDUAL_TOL = 1e-10
FIXED_POINT_TOL = 1e-8


@dataclass(frozen=True)
class CriticalPoint:
    """A critical point of f on the sphere with its Morse data."""

    x: tuple[float, ...]
    value: float
    lagrange_lambda: float
    morse_index: int
    nondegeneracy_margin: float
    residual: float

    def to_document(self) -> CriticalPointDocument:
        return CriticalPointDocument(
            x=list(self.x),
            value=self.value,
            lagrange_lambda=self.lagrange_lambda,
            morse_index=self.morse_index,
            nondegeneracy_margin=self.nondegeneracy_margin,
            residual=self.residual,
        )

    @classmethod
    def from_document(cls, document: CriticalPointDocument) -> "CriticalPoint":
        return cls(
            x=tuple(document.x),
            value=document.value,
            lagrange_lambda=document.lagrange_lambda,
            morse_index=document.morse_index,
            nondegeneracy_margin=document.nondegeneracy_margin,
            residual=document.residual,
        )


@dataclass(frozen=True)
class SolveReport:
    """Outcome of one solver run."""

    points: tuple[CriticalPoint, ...]
    expected_count: int
    found_count: int
    euler_sum: int
    certified: bool
    degenerate_detected: bool
    diagnostics: str

    @property
    def index_census(self) -> dict[int, int]:
        return dict(sorted(Counter(p.morse_index for p in self.points).items()))

    @property
    def min_margin(self) -> float:
        return min((p.nondegeneracy_margin for p in self.points), default=0.0)

    @property
    def max_residual(self) -> float:
        return max((p.residual for p in self.points), default=0.0)

    def to_document(self) -> SolveReportDocument:
        return SolveReportDocument(
            expected_count=self.expected_count,
            found_count=self.found_count,
            euler_sum=self.euler_sum,
            certified=self.certified,
            degenerate_detected=self.degenerate_detected,
            diagnostics=self.diagnostics,
            points=[p.to_document() for p in self.points],
        )

    @classmethod
    def from_document(cls, document: SolveReportDocument) -> "SolveReport":
        points = tuple(CriticalPoint.from_document(p) for p in document.points)
        return cls(
            points=points,
            expected_count=document.expected_count,
            found_count=document.found_count,
            euler_sum=document.euler_sum,
            certified=document.certified,
            degenerate_detected=document.degenerate_detected,
            diagnostics=document.diagnostics,
        )


def count_eigenpoints(d: int, n: int) -> int:
    """m_{d,n} = (d-1)^{n-1} + ... + (d-1) + 1 (the sum form is valid for d = 2)."""
    return sum((d - 1) ** k for k in range(n))


def sphere_euler_characteristic(n: int) -> int:
    """Euler characteristic of S^{n-1}."""
    return 1 + (-1) ** (n - 1)


def _canonical_sign(x: NDArray[np.float64], tol: float = 1e-12) -> int:
    for v in x:
        if abs(v) > tol:
            return 1 if v > 0 else -1
    return 1


def _tangent_spectrum(f: HomogeneousPolynomial, x: NDArray[np.float64]) -> tuple[NDArray[np.float64], float]:
    """Eigenvalues of the Hessian of f|S at x on the tangent space, and lambda_L."""
    gradient = f.gradient_at(x)
    lagrange = float(gradient @ x)
    basis = linalg.null_space(x[None, :])
    tangent = basis.T @ f.hessian_at(x) @ basis - lagrange * np.eye(basis.shape[1])
    return linalg.eigvalsh(tangent), lagrange


def morse_index(
    f: HomogeneousPolynomial,
    x: ArrayLike,
    nondegeneracy_tol: float = 1e-8,
) -> tuple[int, float]:
    """
    Morse index and nondegeneracy margin of a critical point x of f|S.

    The index counts negative tangent eigenvalues of the projected Hessian; the
    margin is the smallest absolute one.
    """
    point = np.asarray(x, dtype=float)
    if abs(np.linalg.norm(point) - 1.0) > 1e-12:
        raise NormalizationError(f"expected a unit vector, got norm {np.linalg.norm(point):.15g}")
    eigenvalues, _ = _tangent_spectrum(f, point)
    margin = float(np.min(np.abs(eigenvalues))) if eigenvalues.size else math.inf
    index = int(np.sum(eigenvalues < 0))
    if margin <= nondegeneracy_tol:
        raise DegenerateCriticalPointError(
            f"critical point is degenerate: smallest tangent eigenvalue {margin:.3e}",
            margin=margin,
        )
    return index, margin


class SphereSolver:
    """Multistart Riemannian Newton for critical points of f on S^{n-1}."""

    def __init__(self, config: SolverConfig | None = None, logger: logging.Logger | None = None) -> None:
        self.config = config or SolverConfig()
        self.logger = logger if logger is not None else create_default_logger("SphereSolver")

    def find_critical_points(self, f: HomogeneousPolynomial) -> SolveReport:
        """Run all starts, cluster, polish and certify against 2 m_{d,n}."""
        if f.degree < 1:
            raise ArgumentError("critical points on the sphere need degree at least 1")
        if f.is_zero():
            raise ArgumentError("the zero polynomial has no isolated critical points")

        n, d = f.n_vars, f.degree
        config = self.config
        expected = 2 * count_eigenpoints(d, n)
        scale = max(1.0, d * f.coefficient_scale())

        starts = self._starts(n, config.starts_per_expected_point * expected)
        self._log(f"Solving degree {d} in {n} variables: {len(starts)} starts, expecting {expected}")

        points, residuals = self._newton(f, starts, config.max_newton_iters, scale)
        converged = residuals <= config.grad_tol
        points, residuals = points[converged], residuals[converged]
        unconverged = len(starts) - len(points)
        self._log(f"Converged {len(points)} starts, discarded {unconverged}")

        order = np.lexsort(points.T[::-1]) if len(points) else np.array([], dtype=int)
        points, residuals = points[order], residuals[order]
        representatives = self._cluster(points, residuals)
        self._log(f"Found {len(representatives)} clusters")

        critical = [self._classify(f, x, scale) for x in representatives]
        critical.sort(key=lambda p: self._sort_key(p.x))
        return self._report(critical, expected, n, unconverged)

    # -- stages ----------------------------------------------------------------

    def _starts(self, n: int, count: int) -> NDArray[np.float64]:
        """Antithetic pairs of seeded Gaussian directions on the sphere."""
        rng = np.random.default_rng(self.config.seed)
        half = rng.standard_normal(((count + 1) // 2, n))
        half /= np.linalg.norm(half, axis=1, keepdims=True)
        return np.vstack([half, -half])[:count]

    def _newton(
        self,
        f: HomogeneousPolynomial,
        points: NDArray[np.float64],
        iterations: int,
        scale: float,
    ) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
        points = points.copy()
        residuals = self._residuals(f, points, scale)
        for _ in range(iterations):
            active = residuals > self.config.grad_tol
            if not np.any(active):
                break
            points[active] = self._step(f, points[active], scale)
            residuals[active] = self._residuals(f, points[active], scale)
        return points, residuals

    def _residuals(self, f: HomogeneousPolynomial, points: NDArray[np.float64], scale: float) -> NDArray[np.float64]:
        gradient = f.gradient_at(points)
        lagrange = np.einsum("ij,ij->i", gradient, points)
        riemannian = gradient - lagrange[:, None] * points
        return np.linalg.norm(riemannian, axis=1) / scale

    def _step(self, f: HomogeneousPolynomial, points: NDArray[np.float64], scale: float) -> NDArray[np.float64]:
        """
        One Newton step per point, retracted to the sphere.

        Solves (P(H - lambda I)P + x x^T) v = -P grad f by a pseudo-inverse that
        drops near-singular directions; when those directions carry most of the
        gradient a fixed-length projected-gradient step is taken instead.
        """
        n = points.shape[1]
        gradient = f.gradient_at(points)
        hessian = f.hessian_at(points)
        lagrange = np.einsum("ij,ij->i", gradient, points)
        riemannian = gradient - lagrange[:, None] * points

        outer = np.einsum("ki,kj->kij", points, points)
        projector = np.eye(n)[None, :, :] - outer
        shifted = hessian - lagrange[:, None, None] * np.eye(n)[None, :, :]
        system = projector @ shifted @ projector + outer

        eigenvalues, vectors = np.linalg.eigh(system)
        coordinates = np.einsum("kji,kj->ki", vectors, -riemannian)
        keep = np.abs(eigenvalues) > SINGULAR_TOL * scale
        safe = np.where(keep, eigenvalues, 1.0)
        step = np.einsum("kij,kj->ki", vectors, np.where(keep, coordinates / safe, 0.0))

        gradient_norm = np.linalg.norm(riemannian, axis=1)
        unexplained = np.linalg.norm(np.where(keep, 0.0, coordinates), axis=1)
        fallback = unexplained > 0.5 * gradient_norm
        if np.any(fallback):
            direction = riemannian[fallback] / np.maximum(gradient_norm[fallback], np.finfo(float).tiny)[:, None]
            step[fallback] = -FALLBACK_STEP * direction

        length = np.linalg.norm(step, axis=1)
        too_long = length > MAX_STEP
        step[too_long] *= (MAX_STEP / length[too_long])[:, None]

        moved = points + step
        return moved / np.linalg.norm(moved, axis=1, keepdims=True)

    def _cluster(self, points: NDArray[np.float64], residuals: NDArray[np.float64]) -> list[NDArray[np.float64]]:
        """Single-linkage clusters within the angular tolerance; best member per cluster."""
        if len(points) == 0:
            return []
        if len(points) == 1:
            labels = np.array([1])
        else:
            chord = 2.0 * math.sin(self.config.cluster_angle_tol / 2.0)
            labels = fcluster(linkage(points, method="single", metric="euclidean"), t=chord, criterion="distance")
        representatives = []
        for label in np.unique(labels):
            members = np.flatnonzero(labels == label)
            best = members[np.argmin(residuals[members])]
            representatives.append(points[best])
        return representatives

    def _classify(self, f: HomogeneousPolynomial, x: NDArray[np.float64], scale: float) -> CriticalPoint:
        current = x[None, :]
        best, residual = current, self._residuals(f, current, scale)
        for _ in range(POLISH_STEPS):
            current = self._step(f, current, scale)
            candidate = self._residuals(f, current, scale)
            if candidate[0] < residual[0]:
                best, residual = current, candidate
        point = best[0]
        eigenvalues, lagrange = _tangent_spectrum(f, point)
        return CriticalPoint(
            x=tuple(float(v) for v in point),
            value=float(f.evaluate(point)),
            lagrange_lambda=lagrange,
            morse_index=int(np.sum(eigenvalues < 0)),
            nondegeneracy_margin=float(np.min(np.abs(eigenvalues))) if eigenvalues.size else math.inf,
            residual=float(residual[0]),
        )

    @staticmethod
    def _sort_key(x: tuple[float, ...]) -> tuple[tuple[float, ...], int]:
        sign = _canonical_sign(np.asarray(x))
        return tuple(sign * v for v in x), -sign

    def _antipodal_closure(self, critical: list[CriticalPoint]) -> bool:
        if not critical:
            return True
        coords = np.array([p.x for p in critical])
        chord = 2.0 * math.sin(10.0 * self.config.cluster_angle_tol / 2.0)
        for x in coords:
            if np.min(np.linalg.norm(coords + x, axis=1)) > chord:
                return False
        return True

    def _report(self, critical: list[CriticalPoint], expected: int, n: int, unconverged: int) -> SolveReport:
        config = self.config
        degenerate = [p for p in critical if p.nondegeneracy_margin <= config.nondegeneracy_tol]
        euler = sum((-1) ** p.morse_index for p in critical)
        closed = self._antipodal_closure(critical)
        residual_ok = all(p.residual <= config.grad_tol for p in critical)

        lines = [f"found {len(critical)}/{expected} critical points", f"euler sum {euler} (sphere: {sphere_euler_characteristic(n)})"]
        if unconverged:
            lines.append(f"{unconverged} starts did not converge")
        if degenerate:
            lines.append(f"{len(degenerate)} degenerate critical points")
        if len(degenerate) >= CONTINUUM_THRESHOLD:
            lines.append("degenerate continuum suspected")
        if not closed:
            lines.append("antipodal closure failed")
        if not residual_ok:
            lines.append("residual above tolerance after polishing")

        certified = (
            len(critical) == expected
            and not degenerate
            and residual_ok
            and closed
            and euler == sphere_euler_characteristic(n)
        )
        if certified:
            lines.append(f"{len(critical)}/{expected} certified")
        diagnostics = "; ".join(lines)
        self._log(diagnostics)

        return SolveReport(
            points=tuple(critical),
            expected_count=expected,
            found_count=len(critical),
            euler_sum=euler,
            certified=certified,
            degenerate_detected=bool(degenerate),
            diagnostics=diagnostics,
        )

    def _log(self, message: str) -> None:
        """Log a message if logger is available."""
        if self.logger:
            self.logger.info(message)


def find_critical_points(f: HomogeneousPolynomial, config: SolverConfig | None = None) -> SolveReport:
    """Critical points of f on the unit sphere, certified against 2 m_{d,n}."""
    return SphereSolver(config).find_critical_points(f)


def certify(report: SolveReport, tensor: SymmetricTensor) -> list[EigenPair]:
    """
    Eigenpairs of the tensor from a certified report (lambda = lambda_L / d).

    Every pair must satisfy ||Ax^{d-1} - lambda x|| <= 1e-10, and for nonzero
    lambda x must be a fixed point (up to sign) of x -> Ax^{d-1}/||Ax^{d-1}||.
    """
    if not report.certified:
        raise CertificationError(f"report is not certified: {report.diagnostics}")

    pairs = []
    for point in report.points:
        x = np.asarray(point.x)
        lambda_ = point.lagrange_lambda / tensor.order
        residual = eigen_residual(tensor, x, lambda_)
        if residual > CERTIFY_RESIDUAL_TOL:
            raise CertificationError(f"eigen residual {residual:.3e} at {point.x} exceeds {CERTIFY_RESIDUAL_TOL:.0e}")
        if abs(lambda_) > 1e-12:
            image = fixed_point_map(tensor, x)
            gap = min(np.linalg.norm(image - x), np.linalg.norm(image + x))
            if gap > FIXED_POINT_TOL:
                raise CertificationError(f"fixed-point check failed at {point.x}: gap {gap:.3e}")
        pairs.append(EigenPair(x=point.x, lambda_=lambda_, residual=residual))
    return pairs
