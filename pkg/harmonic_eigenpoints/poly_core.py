"""
Homogeneous and univariate polynomials with real coefficients.

HomogeneousPolynomial stores a sparse map from exponent tuples to non-zero
coefficients, all monomials sharing one total degree. Terms are kept in graded
lexicographic order (x1 dominant), which fixes equality, printing and
serialization. Calculus (gradient, Hessian, Laplacian) is done on the
coefficients; numeric evaluation is batched through MonomialBasis.

UnivariatePolynomial is a dense coefficient tuple (index k holds the t**k
coefficient) backed by numpy.polynomial.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from functools import cached_property
from typing import Literal, Union

import numpy as np
from numpy.polynomial import polynomial as npoly
from numpy.typing import ArrayLike, NDArray

from harmonic_eigenpoints.errors import ArgumentError, DimensionError, ParityError
from harmonic_eigenpoints.schemas import PolynomialDocument, TermDocument

Exponents = tuple[int, ...]
Scalar = Union[int, float]
Parity = Literal["even", "odd", "none"]


class MonomialBasis:
    """
    A fixed list of monomials plus a coefficient matrix.

    Evaluates several polynomials of the same shape on a batch of points with
    one power table and one matrix product: values(X) @ coefficients.T.
    """

    def __init__(self, n_vars: int, polynomials: Sequence["HomogeneousPolynomial"]) -> None:
        exponents = sorted({e for p in polynomials for e in p.terms}, reverse=True)
        index = {e: k for k, e in enumerate(exponents)}
        coefficients = np.zeros((len(polynomials), len(exponents)))
        for row, p in enumerate(polynomials):
            for e, c in p.terms.items():
                coefficients[row, index[e]] = c

        self.n_vars = n_vars
        self.exponents = np.array(exponents, dtype=np.int64).reshape(len(exponents), n_vars)
        self.coefficients = coefficients

    def monomials(self, points: NDArray[np.float64]) -> NDArray[np.float64]:
        """Monomial values, shape (m, T), for points of shape (m, n)."""
        return np.prod(points[:, None, :] ** self.exponents[None, :, :], axis=2)

    def evaluate(self, points: NDArray[np.float64]) -> NDArray[np.float64]:
        """Polynomial values, shape (m, k), for points of shape (m, n)."""
        return self.monomials(points) @ self.coefficients.T


class HomogeneousPolynomial:
    """A real homogeneous polynomial of fixed degree in n_vars variables."""

    def __init__(
        self,
        n_vars: int,
        degree: int,
        terms: Mapping[Sequence[int], Scalar] | Iterable[tuple[Sequence[int], Scalar]] = (),
    ) -> None:
        if n_vars < 1:
            raise ArgumentError(f"n_vars must be at least 1, got {n_vars}")
        if degree < 0:
            raise ArgumentError(f"degree must be non-negative, got {degree}")

        items = terms.items() if isinstance(terms, Mapping) else terms
        accumulated: dict[Exponents, float] = {}
        for raw_exponents, raw_coef in items:
            exponents = tuple(int(e) for e in raw_exponents)
            if len(exponents) != n_vars:
                raise DimensionError(
                    f"monomial {exponents} has {len(exponents)} exponents, expected {n_vars}"
                )
            if min(exponents, default=0) < 0:
                raise ArgumentError(f"negative exponent in monomial {exponents}")
            if sum(exponents) != degree:
                raise ArgumentError(
                    f"monomial {exponents} has degree {sum(exponents)}, expected {degree}"
                )
            coef = float(raw_coef)
            if not math.isfinite(coef):
                raise ArgumentError(f"non-finite coefficient {coef} for monomial {exponents}")
            accumulated[exponents] = accumulated.get(exponents, 0.0) + coef

        self._n_vars = n_vars
        self._degree = degree
        self._terms: dict[Exponents, float] = {
            e: c for e, c in sorted(accumulated.items(), reverse=True) if c != 0.0
        }

    # -- construction helpers -------------------------------------------------

    @classmethod
    def zero(cls, n_vars: int, degree: int = 0) -> "HomogeneousPolynomial":
        return cls(n_vars, degree)

    @classmethod
    def constant(cls, n_vars: int, value: Scalar) -> "HomogeneousPolynomial":
        return cls(n_vars, 0, {(0,) * n_vars: value})

    @classmethod
    def variable(cls, index: int, n_vars: int) -> "HomogeneousPolynomial":
        """The coordinate function x_index (0-based)."""
        if not 0 <= index < n_vars:
            raise DimensionError(f"variable index {index} out of range for {n_vars} variables")
        exponents = [0] * n_vars
        exponents[index] = 1
        return cls(n_vars, 1, {tuple(exponents): 1.0})

    @classmethod
    def squared_norm(cls, n_vars: int) -> "HomogeneousPolynomial":
        """x1**2 + ... + xn**2."""
        terms = {}
        for i in range(n_vars):
            exponents = [0] * n_vars
            exponents[i] = 2
            terms[tuple(exponents)] = 1.0
        return cls(n_vars, 2, terms)

    # -- accessors -----------------------------------------------------------

    @property
    def n_vars(self) -> int:
        return self._n_vars

    @property
    def degree(self) -> int:
        return self._degree

    @property
    def terms(self) -> Mapping[Exponents, float]:
        """Read-only view of the canonical term map, in graded-lex order."""
        return dict(self._terms)

    def coefficient(self, exponents: Sequence[int]) -> float:
        return self._terms.get(tuple(exponents), 0.0)

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient_scale(self) -> float:
        """Sum of absolute coefficients; bounds |f| on the unit sphere."""
        return float(sum(abs(c) for c in self._terms.values()))

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HomogeneousPolynomial):
            return NotImplemented
        return (
            self._n_vars == other._n_vars
            and self._degree == other._degree
            and self._terms == other._terms
        )

    def __hash__(self) -> int:
        return hash((self._n_vars, self._degree, tuple(self._terms.items())))

    def __repr__(self) -> str:
        return f"HomogeneousPolynomial(n_vars={self._n_vars}, degree={self._degree}, terms={self._terms!r})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for exponents, coef in self._terms.items():
            factors = [
                f"x{i + 1}" if e == 1 else f"x{i + 1}^{e}"
                for i, e in enumerate(exponents)
                if e > 0
            ]
            parts.append(" ".join([f"{coef:+.6g}", *factors]))
        return " ".join(parts)

    # -- arithmetic ------------------------------------------------------------

    def _check_compatible(self, other: "HomogeneousPolynomial") -> None:
        if other._n_vars != self._n_vars:
            raise DimensionError(f"cannot combine polynomials in {self._n_vars} and {other._n_vars} variables")
        if other._degree != self._degree:
            raise ArgumentError(
                f"sum of degree-{self._degree} and degree-{other._degree} polynomials is not homogeneous"
            )

    def __add__(self, other: "HomogeneousPolynomial") -> "HomogeneousPolynomial":
        if not isinstance(other, HomogeneousPolynomial):
            return NotImplemented
        self._check_compatible(other)
        merged = dict(self._terms)
        for e, c in other._terms.items():
            merged[e] = merged.get(e, 0.0) + c
        return HomogeneousPolynomial(self._n_vars, self._degree, merged)

    def __neg__(self) -> "HomogeneousPolynomial":
        return HomogeneousPolynomial(self._n_vars, self._degree, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other: "HomogeneousPolynomial") -> "HomogeneousPolynomial":
        if not isinstance(other, HomogeneousPolynomial):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: "HomogeneousPolynomial | Scalar") -> "HomogeneousPolynomial":
        if isinstance(other, (int, float, np.floating, np.integer)):
            scale = float(other)
            return HomogeneousPolynomial(self._n_vars, self._degree, {e: scale * c for e, c in self._terms.items()})
        if not isinstance(other, HomogeneousPolynomial):
            return NotImplemented
        if other._n_vars != self._n_vars:
            raise DimensionError(f"cannot multiply polynomials in {self._n_vars} and {other._n_vars} variables")
        product: dict[Exponents, float] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                product[e] = product.get(e, 0.0) + c1 * c2
        return HomogeneousPolynomial(self._n_vars, self._degree + other._degree, product)

    def __rmul__(self, other: Scalar) -> "HomogeneousPolynomial":
        return self.__mul__(other)

    def __truediv__(self, other: Scalar) -> "HomogeneousPolynomial":
        return self * (1.0 / float(other))

    def __pow__(self, power: int) -> "HomogeneousPolynomial":
        if power < 0:
            raise ArgumentError("negative powers are not polynomials")
        result = HomogeneousPolynomial.constant(self._n_vars, 1.0)
        for _ in range(power):
            result = result * self
        return result

    # -- evaluation ------------------------------------------------------------

    def _as_points(self, x: ArrayLike) -> tuple[NDArray[np.float64], bool]:
        points = np.asarray(x, dtype=float)
        single = points.ndim == 1
        if single:
            points = points[None, :]
        if points.ndim != 2 or points.shape[1] != self._n_vars:
            raise DimensionError(
                f"expected points with {self._n_vars} coordinates, got shape {np.shape(x)}"
            )
        return points, single

    @cached_property
    def _value_basis(self) -> MonomialBasis:
        return MonomialBasis(self._n_vars, [self])

    @cached_property
    def _gradient_basis(self) -> MonomialBasis:
        return MonomialBasis(self._n_vars, self.gradient())

    @cached_property
    def _hessian_basis(self) -> MonomialBasis:
        return MonomialBasis(self._n_vars, [h for row in self.hessian() for h in row])

    def evaluate(self, x: ArrayLike) -> float | NDArray[np.float64]:
        """Value at a point (float) or at a batch of points of shape (m, n)."""
        points, single = self._as_points(x)
        values = self._value_basis.evaluate(points)[:, 0]
        return float(values[0]) if single else values

    __call__ = evaluate

    def gradient_at(self, x: ArrayLike) -> NDArray[np.float64]:
        """Numeric gradient, shape (n,) or (m, n)."""
        points, single = self._as_points(x)
        values = self._gradient_basis.evaluate(points)
        return values[0] if single else values

    def hessian_at(self, x: ArrayLike) -> NDArray[np.float64]:
        """Numeric Hessian, shape (n, n) or (m, n, n)."""
        points, single = self._as_points(x)
        values = self._hessian_basis.evaluate(points).reshape(-1, self._n_vars, self._n_vars)
        return values[0] if single else values

    # -- calculus --------------------------------------------------------------

    def derivative(self, index: int) -> "HomogeneousPolynomial":
        """Partial derivative with respect to x_index (0-based)."""
        if not 0 <= index < self._n_vars:
            raise DimensionError(f"variable index {index} out of range for {self._n_vars} variables")
        if self._degree == 0:
            return HomogeneousPolynomial.zero(self._n_vars, 0)
        terms: dict[Exponents, float] = {}
        for e, c in self._terms.items():
            if e[index] == 0:
                continue
            lowered = list(e)
            lowered[index] -= 1
            terms[tuple(lowered)] = c * e[index]
        return HomogeneousPolynomial(self._n_vars, self._degree - 1, terms)

    def gradient(self) -> tuple["HomogeneousPolynomial", ...]:
        """Component i is df/dx_i; a degree-0 input gives an all-zero gradient."""
        return tuple(self.derivative(i) for i in range(self._n_vars))

    def hessian(self) -> tuple[tuple["HomogeneousPolynomial", ...], ...]:
        """Symmetric matrix of second partials; degree below 2 gives the zero matrix."""
        n = self._n_vars
        if self._degree < 2:
            zero = HomogeneousPolynomial.zero(n, 0)
            return tuple(tuple(zero for _ in range(n)) for _ in range(n))
        first = self.gradient()
        upper = {(i, j): first[i].derivative(j) for i in range(n) for j in range(i, n)}
        return tuple(
            tuple(upper[(min(i, j), max(i, j))] for j in range(n)) for i in range(n)
        )

    def laplacian(self) -> "HomogeneousPolynomial":
        """Sum of pure second partials; degree below 2 gives the zero polynomial."""
        if self._degree < 2:
            return HomogeneousPolynomial.zero(self._n_vars, 0)
        terms: dict[Exponents, float] = {}
        for e, c in self._terms.items():
            for i, ei in enumerate(e):
                if ei < 2:
                    continue
                lowered = list(e)
                lowered[i] -= 2
                key = tuple(lowered)
                terms[key] = terms.get(key, 0.0) + c * ei * (ei - 1)
        return HomogeneousPolynomial(self._n_vars, self._degree - 2, terms)

    def include(self) -> "HomogeneousPolynomial":
        """The same polynomial read in n_vars + 1 variables (new last variable unused)."""
        return HomogeneousPolynomial(
            self._n_vars + 1,
            self._degree,
            {e + (0,): c for e, c in self._terms.items()},
        )

    def is_harmonic(self, tol: float = 1e-12) -> bool:
        return is_harmonic(self, tol)

    # -- serialization -----------------------------------------------------------

    def to_document(self) -> PolynomialDocument:
        return PolynomialDocument(
            n_vars=self._n_vars,
            degree=self._degree,
            terms=[TermDocument(exps=list(e), coef=c) for e, c in self._terms.items()],
        )

    @classmethod
    def from_document(cls, document: PolynomialDocument) -> "HomogeneousPolynomial":
        return cls(document.n_vars, document.degree, [(t.exps, t.coef) for t in document.terms])


@dataclass(frozen=True)
class UnivariatePolynomial:
    """Dense real polynomial in t; coeffs[k] is the coefficient of t**k."""

    coeffs: tuple[float, ...]

    def __post_init__(self) -> None:
        trimmed = [float(c) for c in self.coeffs]
        while trimmed and trimmed[-1] == 0.0:
            trimmed.pop()
        if not trimmed:
            raise ArgumentError("the zero polynomial has no leading coefficient")
        object.__setattr__(self, "coeffs", tuple(trimmed))

    @classmethod
    def from_array(cls, values: ArrayLike) -> "UnivariatePolynomial":
        return cls(tuple(float(v) for v in np.asarray(values, dtype=float).ravel()))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading_coefficient(self) -> float:
        return self.coeffs[-1]

    @property
    def parity(self) -> Parity:
        odd_free = all(c == 0.0 for k, c in enumerate(self.coeffs) if k % 2 == 1)
        even_free = all(c == 0.0 for k, c in enumerate(self.coeffs) if k % 2 == 0)
        if odd_free:
            return "even"
        if even_free:
            return "odd"
        return "none"

    def has_degree_parity(self) -> bool:
        """True when every term is t**(d - 2k), d the degree."""
        return self.parity == ("even" if self.degree % 2 == 0 else "odd")

    def coefficient_scale(self) -> float:
        return float(sum(abs(c) for c in self.coeffs))

    def derivative(self) -> "UnivariatePolynomial":
        if self.degree == 0:
            raise ArgumentError("the derivative of a constant is the zero polynomial")
        return UnivariatePolynomial.from_array(npoly.polyder(np.array(self.coeffs)))

    def __call__(self, t: ArrayLike) -> float | NDArray[np.float64]:
        values = npoly.polyval(t, np.array(self.coeffs))
        return float(values) if np.ndim(values) == 0 else values

    def __str__(self) -> str:
        return " ".join(f"{c:+.6g} t^{k}" for k, c in reversed(list(enumerate(self.coeffs))) if c != 0.0)


def homogenize_parity(p: UnivariatePolynomial, axis: int, n_vars: int) -> HomogeneousPolynomial:
    """
    The degree-d homogeneous polynomial that restricts to p(x_axis) on the sphere.

    Each term c*t**(d-2k) becomes c * x_axis**(d-2k) * (x1**2 + ... + xn**2)**k.
    `axis` is 0-based.
    """
    if not 0 <= axis < n_vars:
        raise DimensionError(f"axis {axis} out of range for {n_vars} variables")
    d = p.degree
    for k, c in enumerate(p.coeffs):
        if c != 0.0 and (d - k) % 2 != 0:
            raise ParityError(f"term t^{k} has the wrong parity for a degree-{d} polynomial")

    x_axis = HomogeneousPolynomial.variable(axis, n_vars)
    r2 = HomogeneousPolynomial.squared_norm(n_vars)
    result = HomogeneousPolynomial.zero(n_vars, d)
    r2_power = HomogeneousPolynomial.constant(n_vars, 1.0)
    # walk from the top term down so r2 powers are built incrementally
    for k in range(d, -1, -2):
        c = p.coeffs[k]
        if c != 0.0:
            result = result + c * (x_axis**k) * r2_power
        r2_power = r2_power * r2
    return result


def harmonic_defect(f: HomogeneousPolynomial) -> float:
    """
    Largest laplacian coefficient of f, relative to max(1, d**2 * max|c|).

    Zero when the laplacian cancels exactly. Rounding in non-dyadic
    coefficients leaves residues of a few ulp of the coefficient scale.
    """
    lap = f.laplacian()
    if lap.is_zero():
        return 0.0
    scale = max(1.0, max(abs(c) for c in f.terms.values()) * max(f.degree, 1) ** 2)
    return max(abs(c) for c in lap.terms.values()) / scale


def is_harmonic(f: HomogeneousPolynomial, tol: float = 1e-12) -> bool:
    """Laplacian coefficients vanish up to tol relative to the coefficient scale of f."""
    return harmonic_defect(f) <= tol


def spherical_laplacian(f: HomogeneousPolynomial) -> HomogeneousPolynomial:
    """
    Degree-d polynomial whose restriction to the sphere is the spherical Laplacian of f.

    Uses Δf = d(d-1)f + (n-1)d f + Δ_S f on the unit sphere, written homogeneously
    as r**2 Δf - d(d+n-2) f.
    """
    d, n = f.degree, f.n_vars
    eigen = -d * (d + n - 2)
    if d < 2:
        return eigen * f
    return HomogeneousPolynomial.squared_norm(n) * f.laplacian() + eigen * f
