"""
Gegenbauer polynomials G_{d,n} (parameter (n-2)/2) and their derivative roots.

G_{d,n} is generated by the three-term recurrence

    G_0 = 1,  G_1 = (n-2) x,
    G_d = (1/d) [2x (d + n/2 - 2) G_{d-1} - (d + n - 4) G_{d-2}]

which is the normalization used throughout (no unit-norm rescaling). For n = 2
the recurrence collapses to zero; there the parameter-0 limit, the Chebyshev
polynomial T_d, is returned instead.

Roots are isolated by sign changes on a uniform grid, bisection and a Newton
polish. Only simple roots are found this way.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.polynomial import chebyshev as ncheb
from numpy.polynomial import polynomial as npoly
from scipy import integrate, optimize

from harmonic_eigenpoints.errors import ArgumentError, CertificationError, RootCountError
from harmonic_eigenpoints.poly_core import UnivariatePolynomial

GRID_POINTS_PER_DEGREE = 64
BISECTION_XTOL = 1e-12
ROOT_RESIDUAL_TOL = 1e-13
SIMPLICITY_TOL = 1e-8
QUADRATURE_TOL = 1e-12


@dataclass(frozen=True)
class GegenbauerKey:
    """Degree d and ambient dimension n of G_{d,n}."""

    d: int
    n: int

    def __post_init__(self) -> None:
        if self.d < 0:
            raise ArgumentError(f"degree must be non-negative, got {self.d}")
        if self.n < 2:
            raise ArgumentError(f"dimension must be at least 2, got {self.n}")


@dataclass(frozen=True)
class DerivativeRootSet:
    """The d-1 roots of G'_{d,n} in (-1, 1), increasing."""

    key: GegenbauerKey
    roots: tuple[float, ...]
    simplicity_margins: tuple[float, ...]
    residuals: tuple[float, ...]


@lru_cache(maxsize=None)
def gegenbauer(key: GegenbauerKey) -> UnivariatePolynomial:
    """G_{key.d, key.n} by the recurrence (Chebyshev T_d when n = 2)."""
    d, n = key.d, key.n
    if n == 2:
        return UnivariatePolynomial.from_array(ncheb.cheb2poly([0.0] * d + [1.0]))
    previous = np.array([1.0])
    if d == 0:
        return UnivariatePolynomial.from_array(previous)
    current = np.array([0.0, float(n - 2)])
    for k in range(2, d + 1):
        raised = 2.0 * (k + n / 2.0 - 2.0) * npoly.polymulx(current)
        following = npoly.polysub(raised, (k + n - 4) * previous) / k
        previous, current = current, following
    return UnivariatePolynomial.from_array(current)


def isolate_roots(p: UnivariatePolynomial) -> tuple[float, ...]:
    """
    All sign-changing roots of p in the open interval (-1, 1), increasing.

    Uses 64*deg(p) uniform grid cells, bisection to width 1e-12 and one Newton
    step. Roots of polynomials with a definite parity are symmetrized so that
    the returned set is closed under negation.
    """
    cells = GRID_POINTS_PER_DEGREE * max(p.degree, 1)
    grid = np.linspace(-1.0, 1.0, cells + 1)
    values = np.asarray(p(grid))
    dp = p.derivative() if p.degree > 0 else None

    roots: list[float] = []
    for i in range(cells):
        a, b = grid[i], grid[i + 1]
        fa, fb = values[i], values[i + 1]
        if fa == 0.0:
            if i > 0:
                roots.append(float(a))
            continue
        if fa * fb >= 0.0:
            continue
        root = optimize.bisect(p, a, b, xtol=BISECTION_XTOL)
        if dp is not None:
            slope = dp(root)
            if slope != 0.0:
                polished = root - p(root) / slope
                if a <= polished <= b:
                    root = polished
        roots.append(float(root))

    if p.parity != "none":
        roots = _symmetrize(roots)
    return tuple(roots)


def _symmetrize(roots: list[float]) -> list[float]:
    ordered = sorted(roots)
    count = len(ordered)
    for i in range(count // 2):
        j = count - 1 - i
        magnitude = 0.5 * (ordered[j] - ordered[i])
        ordered[i], ordered[j] = -magnitude, magnitude
    if count % 2 == 1:
        ordered[count // 2] = 0.0
    return ordered


def gegenbauer_roots(key: GegenbauerKey) -> tuple[float, ...]:
    """The d simple roots of G_{d,n} in (-1, 1)."""
    roots = isolate_roots(gegenbauer(key))
    if len(roots) != key.d:
        raise RootCountError(
            f"found {len(roots)} roots of G_{{{key.d},{key.n}}}, expected {key.d}",
            found=len(roots),
            expected=key.d,
        )
    return roots


def root_residual_bound(p: UnivariatePolynomial) -> float:
    """1e-13, scaled up by the coefficient scale of p once that exceeds 1."""
    return ROOT_RESIDUAL_TOL * max(1.0, p.coefficient_scale())


def derivative_roots(key: GegenbauerKey) -> DerivativeRootSet:
    """
    The d-1 roots of G'_{d,n} in (-1, 1), polished and certified simple.

    residuals holds |G'(alpha)| at each root.
    """
    if key.d < 2:
        raise ArgumentError(f"G' has no interior roots for d = {key.d}")
    g = gegenbauer(key)
    dg = g.derivative()
    d2g = dg.derivative()

    roots = isolate_roots(dg)
    expected = key.d - 1
    if len(roots) != expected:
        raise RootCountError(
            f"found {len(roots)} roots of G'_{{{key.d},{key.n}}}, expected {expected}",
            found=len(roots),
            expected=expected,
        )

    residuals = tuple(abs(dg(r)) for r in roots)
    margins = tuple(abs(d2g(r)) / abs(g.leading_coefficient) for r in roots)
    bound = root_residual_bound(dg)
    if max(residuals) > bound:
        raise CertificationError(f"root residual {max(residuals):.3e} exceeds {bound:.3e}")
    if min(margins) <= SIMPLICITY_TOL:
        raise RootCountError(
            f"root of G'_{{{key.d},{key.n}}} is not simple (margin {min(margins):.3e})",
            found=len(roots),
            expected=expected,
        )
    return DerivativeRootSet(key=key, roots=roots, simplicity_margins=margins, residuals=residuals)


def _weighted_integral(integrand, n: int) -> float:
    alpha = (n - 3) / 2.0
    if alpha == 0.0:
        value, _ = integrate.quad(integrand, -1.0, 1.0, epsabs=QUADRATURE_TOL, epsrel=QUADRATURE_TOL, limit=200)
    else:
        value, _ = integrate.quad(
            integrand,
            -1.0,
            1.0,
            weight="alg",
            wvar=(alpha, alpha),
            epsabs=QUADRATURE_TOL,
            epsrel=QUADRATURE_TOL,
            limit=200,
        )
    return float(value)


def gegenbauer_norm_squared(d: int, n: int) -> float:
    """Weighted integral of G_{d,n}**2 over [-1, 1]."""
    if n < 3:
        raise ArgumentError(f"the weight (1-z^2)^((n-3)/2) needs n >= 3, got {n}")
    g = gegenbauer(GegenbauerKey(d, n))
    return _weighted_integral(lambda z: g(z) ** 2, n)


def orthogonality_defect(d1: int, d2: int, n: int) -> float:
    """Weighted inner product of G_{d1,n} and G_{d2,n}; zero in exact arithmetic."""
    if d1 == d2:
        raise ArgumentError("orthogonality needs two different degrees")
    if n < 3:
        raise ArgumentError(f"the weight (1-z^2)^((n-3)/2) needs n >= 3, got {n}")
    g1 = gegenbauer(GegenbauerKey(d1, n))
    g2 = gegenbauer(GegenbauerKey(d2, n))
    return _weighted_integral(lambda z: g1(z) * g2(z), n)
