"""
harmonic-eigenpoints: harmonic polynomials whose critical points on the sphere
are all real and nondegenerate, equivalently traceless symmetric tensors with
the generic number of real eigenpoints.
"""

__version__ = "1.0.0"

from harmonic_eigenpoints.constructor import (  # noqa: E402
    ConstructionResult,
    base_m_d2,
    construct,
    generalized_construct,
    lift,
    zonal,
)
from harmonic_eigenpoints.poly_core import HomogeneousPolynomial, UnivariatePolynomial  # noqa: E402
from harmonic_eigenpoints.sphere_solver import SolveReport, count_eigenpoints, find_critical_points  # noqa: E402
from harmonic_eigenpoints.tensor_bridge import SymmetricTensor, poly_to_tensor, tensor_to_poly  # noqa: E402

__all__ = [
    "ConstructionResult",
    "HomogeneousPolynomial",
    "SolveReport",
    "SymmetricTensor",
    "UnivariatePolynomial",
    "base_m_d2",
    "construct",
    "count_eigenpoints",
    "find_critical_points",
    "generalized_construct",
    "lift",
    "poly_to_tensor",
    "tensor_to_poly",
    "zonal",
]
