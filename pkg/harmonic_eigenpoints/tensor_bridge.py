"""
Symmetric tensors and their correspondence with homogeneous polynomials.

A symmetric n^d-tensor is stored compactly: one value per sorted multi-index
(i1 <= ... <= id, 0-based in memory, 1-based in documents). Every permuted
position reads the same value. The polynomial f_A = sum a_{i1..id} x_i1...x_id
has, for a monomial with exponent vector e, coefficient multinomial(d; e) times
the stored value.

Contraction Ax^{d-1} is computed as grad f_A(x) / d (Euler identity), so the
tensor and polynomial views share one evaluation path.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from numpy.typing import ArrayLike, NDArray

from harmonic_eigenpoints.errors import (
    ArgumentError,
    CertificationError,
    DimensionError,
    EmptyError,
    NormalizationError,
)
from harmonic_eigenpoints.poly_core import Exponents, HomogeneousPolynomial
from harmonic_eigenpoints.schemas import TensorDocument, TensorEntryDocument

Index = tuple[int, ...]

UNIT_NORM_TOL = 1e-12
TRACELESS_TOL = 1e-12
TIE_TOL = 1e-12
DISTANCE_CHECK_TOL = 1e-10


def multiplicity(index: Sequence[int]) -> int:
    """Number of distinct permutations of a multi-index (multinomial coefficient)."""
    count = math.factorial(len(index))
    for repeats in Counter(index).values():
        count //= math.factorial(repeats)
    return count


def index_to_exponents(index: Sequence[int], dim: int) -> Exponents:
    exponents = [0] * dim
    for i in index:
        exponents[i] += 1
    return tuple(exponents)


def exponents_to_index(exponents: Sequence[int]) -> Index:
    return tuple(i for i, e in enumerate(exponents) for _ in range(e))


class SymmetricTensor:
    """
    A real symmetric tensor of the given order and dimension.

    The entries are the only state. A polynomial coefficient c becomes the
    entry c / m for its multinomial multiplicity m, so poly -> tensor -> poly
    reproduces each coefficient to within 2 ulp.
    """

    def __init__(
        self,
        order: int,
        dim: int,
        entries: Mapping[Sequence[int], float],
    ) -> None:
        if order < 1:
            raise ArgumentError(f"order must be at least 1, got {order}")
        if dim < 1:
            raise ArgumentError(f"dimension must be at least 1, got {dim}")

        stored: dict[Index, float] = {}
        for raw_index, raw_value in entries.items():
            index = tuple(sorted(int(i) for i in raw_index))
            if len(index) != order:
                raise DimensionError(f"index {tuple(raw_index)} has length {len(index)}, expected {order}")
            if index and (index[0] < 0 or index[-1] >= dim):
                raise DimensionError(f"index {tuple(raw_index)} out of range for dimension {dim}")
            value = float(raw_value)
            if not math.isfinite(value):
                raise ArgumentError(f"non-finite entry {value} at {tuple(raw_index)}")
            if index in stored and stored[index] != value:
                raise ArgumentError(f"conflicting values for symmetric position {index}")
            stored[index] = value

        self._order = order
        self._dim = dim
        self._entries = {k: v for k, v in sorted(stored.items()) if v != 0.0}

    @property
    def order(self) -> int:
        return self._order

    @property
    def dim(self) -> int:
        return self._dim

    @property
    def entries(self) -> Mapping[Index, float]:
        return dict(self._entries)

    def __getitem__(self, index: Sequence[int]) -> float:
        """Value at any (not necessarily sorted) full index."""
        key = tuple(sorted(index))
        if len(key) != self._order:
            raise DimensionError(f"index {tuple(index)} has length {len(key)}, expected {self._order}")
        return self._entries.get(key, 0.0)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SymmetricTensor):
            return NotImplemented
        return (self._order, self._dim, self._entries) == (other._order, other._dim, other._entries)

    def __hash__(self) -> int:
        return hash((self._order, self._dim, tuple(self._entries.items())))

    def __repr__(self) -> str:
        return f"SymmetricTensor(order={self._order}, dim={self._dim}, entries={len(self._entries)})"

    def frobenius_norm(self) -> float:
        return math.sqrt(sum(multiplicity(k) * v * v for k, v in self._entries.items()))

    def to_dense(self) -> NDArray[np.float64]:
        """Full n^d array; meant for small cross-checks."""
        dense = np.zeros((self._dim,) * self._order)
        for full in itertools.product(range(self._dim), repeat=self._order):
            dense[full] = self[full]
        return dense

    @cached_property
    def polynomial(self) -> HomogeneousPolynomial:
        return tensor_to_poly(self)

    def to_document(self) -> TensorDocument:
        return TensorDocument(
            order=self._order,
            dim=self._dim,
            entries=[
                TensorEntryDocument(idx=[i + 1 for i in k], value=v) for k, v in self._entries.items()
            ],
        )

    @classmethod
    def from_document(cls, document: TensorDocument) -> "SymmetricTensor":
        entries: dict[Index, float] = {}
        for entry in document.entries:
            key = tuple(sorted(i - 1 for i in entry.idx))
            if key in entries:
                raise ArgumentError(f"duplicate tensor entry {entry.idx}")
            entries[key] = entry.value
        return cls(document.order, document.dim, entries)


@dataclass(frozen=True)
class EigenPair:
    """Unit eigenvector x with eigenvalue lambda_ and residual ||Ax^{d-1} - lambda x||."""

    x: tuple[float, ...]
    lambda_: float
    residual: float

    def antipode(self, order: int) -> "EigenPair":
        """The equivalent pair (-x, (-1)^d lambda)."""
        return EigenPair(tuple(-v for v in self.x), (-1) ** order * self.lambda_, self.residual)

    def is_canonical(self) -> bool:
        """First coordinate of non-negligible size is positive."""
        for v in self.x:
            if abs(v) > UNIT_NORM_TOL:
                return v > 0
        return True

    def canonical(self, order: int) -> "EigenPair":
        return self if self.is_canonical() else self.antipode(order)


@dataclass(frozen=True)
class RankOneApproximation:
    """Best rank-one approximation lambda * x^{(x)d} and its distance to A."""

    lambda_: float
    x: tuple[float, ...]
    dist: float
    dist_direct: float
    tie: bool


def poly_to_tensor(f: HomogeneousPolynomial) -> SymmetricTensor:
    """The symmetric tensor A with f_A = f."""
    entries = {}
    for exponents, coef in f.terms.items():
        index = exponents_to_index(exponents)
        entries[index] = coef / multiplicity(index)
    return SymmetricTensor(f.degree, f.n_vars, entries)


def tensor_to_poly(tensor: SymmetricTensor) -> HomogeneousPolynomial:
    """The polynomial f_A of a symmetric tensor (inverse of poly_to_tensor)."""
    terms = {
        index_to_exponents(index, tensor.dim): value * multiplicity(index)
        for index, value in tensor.entries.items()
    }
    return HomogeneousPolynomial(tensor.dim, tensor.order, terms)


def apply(tensor: SymmetricTensor, x: ArrayLike) -> NDArray[np.float64]:
    """The vector Ax^{d-1}, computed as grad f_A(x) / d."""
    point = np.asarray(x, dtype=float)
    if point.shape[-1] != tensor.dim:
        raise DimensionError(f"expected {tensor.dim} coordinates, got {point.shape[-1]}")
    return tensor.polynomial.gradient_at(point) / tensor.order


def is_traceless(tensor: SymmetricTensor, tol: float = TRACELESS_TOL) -> bool:
    """Every partial trace sum_i a_{i i i3 .. id} is within tol of zero."""
    if tensor.order < 2:
        raise ArgumentError("traces need order at least 2")
    for rest in itertools.combinations_with_replacement(range(tensor.dim), tensor.order - 2):
        trace = sum(tensor[(i, i) + rest] for i in range(tensor.dim))
        if abs(trace) > tol:
            return False
    return True


def _check_unit(x: NDArray[np.float64]) -> None:
    norm = float(np.linalg.norm(x))
    if abs(norm - 1.0) > UNIT_NORM_TOL:
        raise NormalizationError(f"expected a unit vector, got norm {norm:.15g}")


def eigen_residual(tensor: SymmetricTensor, x: ArrayLike, lambda_: float) -> float:
    """||Ax^{d-1} - lambda x|| for a unit vector x."""
    point = np.asarray(x, dtype=float)
    _check_unit(point)
    return float(np.linalg.norm(apply(tensor, point) - lambda_ * point))


def fixed_point_map(tensor: SymmetricTensor, x: ArrayLike) -> NDArray[np.float64]:
    """x -> Ax^{d-1} / ||Ax^{d-1}||; eigenvectors with nonzero eigenvalue are fixed up to sign."""
    image = apply(tensor, x)
    norm = float(np.linalg.norm(image))
    if norm == 0.0:
        raise ArgumentError("Ax^{d-1} vanishes; the map is undefined at this point")
    return image / norm


def rank_one_distance(tensor: SymmetricTensor, lambda_: float, x: ArrayLike) -> float:
    """Frobenius distance from A to lambda * x^{(x)d}, summed over every position."""
    point = np.asarray(x, dtype=float)
    keys = list(itertools.combinations_with_replacement(range(tensor.dim), tensor.order))
    indices = np.array(keys, dtype=np.int64).reshape(len(keys), tensor.order)
    products = np.prod(point[indices], axis=1)
    values = np.array([tensor[k] for k in keys])
    weights = np.array([multiplicity(k) for k in keys], dtype=float)
    return math.sqrt(float(np.sum(weights * (values - lambda_ * products) ** 2)))


def best_rank_one(tensor: SymmetricTensor, pairs: Sequence[EigenPair]) -> RankOneApproximation:
    """
    The eigenpair of largest |lambda| and its rank-one distance.

    dist**2 = ||A||_F**2 - lambda**2 at a critical pair; the closed form is
    cross-checked against rank_one_distance.
    """
    if not pairs:
        raise EmptyError("no eigenpairs to choose from")

    top = max(abs(p.lambda_) for p in pairs)
    candidates = [p.canonical(tensor.order) for p in pairs if abs(p.lambda_) >= top - TIE_TOL]
    distinct = {c.x for c in candidates}
    chosen = min(candidates, key=lambda p: p.x)

    norm_sq = tensor.frobenius_norm() ** 2
    dist_sq = max(norm_sq - chosen.lambda_**2, 0.0)
    direct = rank_one_distance(tensor, chosen.lambda_, chosen.x)
    if abs(direct**2 - dist_sq) > DISTANCE_CHECK_TOL * max(1.0, norm_sq):
        raise CertificationError(
            f"rank-one distance mismatch: closed form {dist_sq:.15g}, direct {direct**2:.15g}"
        )
    return RankOneApproximation(
        lambda_=chosen.lambda_,
        x=chosen.x,
        dist=math.sqrt(dist_sq),
        dist_direct=direct,
        tie=len(distinct) > 1,
    )


def sphere_grid(dim: int, n_points: int, seed: int = 0) -> NDArray[np.float64]:
    """Roughly uniform unit vectors: circle angles, a Fibonacci lattice, or seeded Gaussians."""
    if dim == 1:
        return np.array([[1.0], [-1.0]])
    if dim == 2:
        angles = 2.0 * np.pi * np.arange(n_points) / n_points
        return np.column_stack([np.cos(angles), np.sin(angles)])
    if dim == 3:
        k = np.arange(n_points) + 0.5
        z = 1.0 - 2.0 * k / n_points
        phi = np.pi * (1.0 + np.sqrt(5.0)) * k
        r = np.sqrt(1.0 - z * z)
        return np.column_stack([r * np.cos(phi), r * np.sin(phi), z])
    rng = np.random.default_rng(seed)
    points = rng.standard_normal((n_points, dim))
    return points / np.linalg.norm(points, axis=1, keepdims=True)


def grid_rank_one_distance(
    tensor: SymmetricTensor,
    n_points: int = 1_000_000,
    seed: int = 0,
    chunk: int = 100_000,
) -> float:
    """
    Brute-force minimum of dist_A over a sphere grid.

    For fixed x the best lambda is f_A(x), leaving ||A||**2 - f_A(x)**2, so the
    grid search only needs the largest |f_A| on the grid.
    """
    points = sphere_grid(tensor.dim, n_points, seed)
    best = 0.0
    for start in range(0, len(points), chunk):
        values = tensor.polynomial.evaluate(points[start : start + chunk])
        best = max(best, float(np.max(values**2)))
    return math.sqrt(max(tensor.frobenius_norm() ** 2 - best, 0.0))
