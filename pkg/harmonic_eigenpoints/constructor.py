"""
Inductive construction of harmonic polynomials with the maximal number of
critical points on the sphere.

Level 2 is the sectoral harmonic a*cos(d theta) + b*sin(d theta). Each further
level adds a variable:

    M_{d,n+1} = Z_{d,n+1} + epsilon * M_{d,n}

where Z is the zonal harmonic about the new axis and epsilon is the first
value of a decreasing schedule whose result the sphere solver certifies with
2 m_{d,n+1} nondegenerate critical points.
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from math import comb
from typing import Optional

from harmonic_eigenpoints.config import ConstructionParams, SolverConfig
from harmonic_eigenpoints.errors import (
    ArgumentError,
    CertificationError,
    EpsilonExhaustedError,
    PreconditionError,
)
from harmonic_eigenpoints.gegenbauer import SIMPLICITY_TOL, GegenbauerKey, gegenbauer, isolate_roots
from harmonic_eigenpoints.log import create_default_logger
from harmonic_eigenpoints.poly_core import (
    HomogeneousPolynomial,
    UnivariatePolynomial,
    harmonic_defect,
    homogenize_parity,
)
from harmonic_eigenpoints.schemas import CertificateDocument, ConstructionDocument, LevelDocument
from harmonic_eigenpoints.sphere_solver import SolveReport, SphereSolver
from harmonic_eigenpoints.tensor_bridge import SymmetricTensor, is_traceless, poly_to_tensor

HARMONIC_TOL = 1e-12


def base_m_d2(d: int, a: float = 1.0, b: float = 0.0) -> HomogeneousPolynomial:
    """
    a*Re((x2 + i x1)^d) + b*Im((x2 + i x1)^d).

    On the circle x1 = sin(theta), x2 = cos(theta) this is a*cos(d theta) + b*sin(d theta).
    """
    if d < 1:
        raise ArgumentError(f"degree must be at least 1, got {d}")
    if a == 0.0 and b == 0.0:
        raise ArgumentError("phase (a, b) must not be (0, 0)")
    terms: dict[tuple[int, int], float] = {}
    for k in range(d + 1):
        # i^k is real for even k, imaginary for odd k
        sign = -1.0 if (k // 2) % 2 else 1.0
        weight = a if k % 2 == 0 else b
        if weight != 0.0:
            terms[(k, d - k)] = weight * sign * comb(d, k)
    return HomogeneousPolynomial(2, d, terms)


def zonal(d: int, n: int) -> HomogeneousPolynomial:
    """Zonal harmonic G_{d,n}(x_n), homogenized to degree d in n variables."""
    if d < 1:
        raise ArgumentError(f"degree must be at least 1, got {d}")
    return homogenize_parity(gegenbauer(GegenbauerKey(d, n)), axis=n - 1, n_vars=n)


def lift(polynomial: HomogeneousPolynomial, epsilon: float) -> HomogeneousPolynomial:
    """zonal(d, n + 1) + epsilon * polynomial, read in n + 1 variables."""
    if epsilon < 0:
        raise ArgumentError(f"epsilon must be non-negative, got {epsilon}")
    return zonal(polynomial.degree, polynomial.n_vars + 1) + epsilon * polynomial.include()


@dataclass(frozen=True)
class Certificate:
    """Summary of a certified solver report."""

    count: int
    min_margin: float
    max_residual: float
    euler_sum: int
    index_census: dict[int, int]

    @classmethod
    def from_report(cls, report: SolveReport) -> "Certificate":
        return cls(
            count=report.found_count,
            min_margin=report.min_margin,
            max_residual=report.max_residual,
            euler_sum=report.euler_sum,
            index_census=report.index_census,
        )

    def to_document(self) -> CertificateDocument:
        return CertificateDocument(
            count=self.count,
            min_margin=self.min_margin,
            max_residual=self.max_residual,
            euler_sum=self.euler_sum,
            index_census=dict(self.index_census),
        )

    @classmethod
    def from_document(cls, document: CertificateDocument) -> "Certificate":
        return cls(
            count=document.count,
            min_margin=document.min_margin,
            max_residual=document.max_residual,
            euler_sum=document.euler_sum,
            index_census=dict(document.index_census),
        )


@dataclass(frozen=True)
class ConstructionLevel:
    n: int
    polynomial: HomogeneousPolynomial
    tensor: SymmetricTensor
    epsilon_used: Optional[float]
    certificate: Certificate
    report: Optional[SolveReport] = field(default=None, compare=False, repr=False)

    def to_document(self) -> LevelDocument:
        return LevelDocument(
            n=self.n,
            polynomial=self.polynomial.to_document(),
            tensor=self.tensor.to_document(),
            epsilon_used=self.epsilon_used,
            certificate=self.certificate.to_document(),
        )

    @classmethod
    def from_document(cls, document: LevelDocument) -> "ConstructionLevel":
        polynomial = HomogeneousPolynomial.from_document(document.polynomial)
        return cls(
            n=document.n,
            polynomial=polynomial,
            tensor=poly_to_tensor(polynomial),
            epsilon_used=document.epsilon_used,
            certificate=Certificate.from_document(document.certificate),
        )


@dataclass(frozen=True)
class ConstructionResult:
    """Certified levels n = 2 .. n_target (a single level for d = 1)."""

    d: int
    levels: tuple[ConstructionLevel, ...]

    @property
    def final(self) -> ConstructionLevel:
        return self.levels[-1]

    def to_document(self) -> ConstructionDocument:
        return ConstructionDocument(d=self.d, levels=[level.to_document() for level in self.levels])

    @classmethod
    def from_document(cls, document: ConstructionDocument) -> "ConstructionResult":
        return cls(d=document.d, levels=tuple(ConstructionLevel.from_document(l) for l in document.levels))


class Constructor:
    """Runs the level-by-level construction with epsilon selection."""

    def __init__(
        self,
        params: ConstructionParams,
        logger: logging.Logger | None = None,
        solver_config: SolverConfig | None = None,
    ) -> None:
        self.params = params
        self.logger = logger if logger is not None else create_default_logger("Constructor")
        config = solver_config if solver_config is not None else params.solver_config()
        self.solver = SphereSolver(config, logger=self.logger.getChild("solver"))

    def construct(self) -> ConstructionResult:
        params = self.params
        d = params.d
        a, b = params.base_phase

        base = base_m_d2(d, a, b)
        report = self.solver.find_critical_points(base)
        if not report.certified:
            raise CertificationError(f"base level n = 2 failed certification: {report.diagnostics}")
        levels = [self._level(2, base, None, report)]
        self._log(f"Level 2 certified with {report.found_count} critical points")

        schedule = params.epsilon_schedule()
        for n in range(3, params.n_target + 1):
            previous = levels[-1]
            polynomial, epsilon, report = self._lift_certified(
                previous.polynomial,
                lambda eps, prev=previous.polynomial: lift(prev, eps),
                schedule,
                level=n,
            )
            expected = 2 + (d - 1) * previous.certificate.count
            if report.found_count != expected:
                raise CertificationError(
                    f"level {n} has {report.found_count} critical points, expected 2 + (d-1)*{previous.certificate.count} = {expected}"
                )
            levels.append(self._level(n, polynomial, epsilon, report))

        return ConstructionResult(d=d, levels=tuple(levels))

    def _lift_certified(
        self,
        previous: HomogeneousPolynomial,
        build: Callable[[float], HomogeneousPolynomial],
        schedule: Sequence[float],
        level: int,
    ) -> tuple[HomogeneousPolynomial, float, SolveReport]:
        """First epsilon in the schedule whose lift is certified."""
        report = None
        for epsilon in schedule:
            candidate = build(epsilon)
            report = self.solver.find_critical_points(candidate)
            if report.certified:
                self._log(f"Level {level} certified at epsilon={epsilon:g}")
                return candidate, epsilon, report
            self._log(f"Level {level} not certified at epsilon={epsilon:g}: {report.diagnostics}")
        raise EpsilonExhaustedError(
            f"no epsilon in the schedule certified level {level} (d = {previous.degree})",
            level=level,
            report=report,
        )

    def _level(
        self,
        n: int,
        polynomial: HomogeneousPolynomial,
        epsilon: Optional[float],
        report: SolveReport,
    ) -> ConstructionLevel:
        tolerance = self.params.residual_tol
        defect = harmonic_defect(polynomial)
        if defect > HARMONIC_TOL:
            raise CertificationError(f"level {n} polynomial is not harmonic (laplacian defect {defect:.3e})")
        self.logger.debug(f"level {n}: laplacian defect {defect:.3e}")
        tensor = poly_to_tensor(polynomial)
        if tensor.order >= 2 and not is_traceless(tensor):
            raise CertificationError(f"level {n} tensor is not traceless")
        if report.max_residual > tolerance:
            raise CertificationError(f"level {n} residual {report.max_residual:.3e} exceeds {tolerance:.0e}")
        return ConstructionLevel(
            n=n,
            polynomial=polynomial,
            tensor=tensor,
            epsilon_used=epsilon,
            certificate=Certificate.from_report(report),
            report=report,
        )

    def generalized_construct(
        self,
        p: UnivariatePolynomial,
        f: HomogeneousPolynomial,
        epsilon_schedule: Sequence[float],
    ) -> HomogeneousPolynomial:
        """p(x_{n+1}) homogenized, plus epsilon * f, for the first certifying epsilon."""
        d, n = f.degree, f.n_vars
        if p.degree != d:
            raise PreconditionError(f"p has degree {p.degree}, f has degree {d}")
        if not p.has_degree_parity():
            raise PreconditionError(f"p must be {'even' if d % 2 == 0 else 'odd'} for degree {d}")
        dp = p.derivative()
        roots = isolate_roots(dp)
        if len(roots) != d - 1:
            raise PreconditionError(f"p' has {len(roots)} simple roots in (-1, 1), expected {d - 1}")
        if d >= 3:
            d2p = dp.derivative()
            margin = min(abs(d2p(r)) for r in roots) / abs(p.leading_coefficient)
            if margin <= SIMPLICITY_TOL:
                raise PreconditionError(f"a root of p' is not simple (margin {margin:.3e})")

        base_report = self.solver.find_critical_points(f)
        if not base_report.certified:
            raise PreconditionError(f"f is not certified: {base_report.diagnostics}")

        head = homogenize_parity(p, axis=n, n_vars=n + 1)
        lifted = f.include()
        polynomial, _, _ = self._lift_certified(f, lambda eps: head + eps * lifted, epsilon_schedule, level=n + 1)
        return polynomial

    def _log(self, message: str) -> None:
        """Log a message if logger is available."""
        if self.logger:
            self.logger.info(message)


def construct(params: ConstructionParams) -> ConstructionResult:
    """Certified construction for every level n = 2 .. params.n_target."""
    return Constructor(params).construct()


def generalized_construct(
    p: UnivariatePolynomial,
    f: HomogeneousPolynomial,
    epsilon_schedule: Sequence[float],
    solver_config: SolverConfig | None = None,
) -> HomogeneousPolynomial:
    """
    Lift a certified f by any parity-matched p whose derivative has d - 1 simple
    roots in (-1, 1).
    """
    config = solver_config or SolverConfig()
    params = ConstructionParams(d=max(f.degree, 2), n_target=f.n_vars + 1, seed=config.seed)
    return Constructor(params, solver_config=config).generalized_construct(p, f, epsilon_schedule)


def construct_degree_one(n: int, solver_config: SolverConfig | None = None) -> ConstructionResult:
    """The linear case: x_n has exactly the two critical points +-e_n."""
    if n < 2:
        raise ArgumentError(f"dimension must be at least 2, got {n}")
    polynomial = HomogeneousPolynomial.variable(n - 1, n)
    report = SphereSolver(solver_config).find_critical_points(polynomial)
    if not report.certified:
        raise CertificationError(f"x_{n} failed certification: {report.diagnostics}")
    level = ConstructionLevel(
        n=n,
        polynomial=polynomial,
        tensor=poly_to_tensor(polynomial),
        epsilon_used=None,
        certificate=Certificate.from_report(report),
        report=report,
    )
    return ConstructionResult(d=1, levels=(level,))
