"""Exact polynomial arithmetic, Groebner bases and Milnor algebras."""
from .gaussian import I, ONE, ZERO, GaussianRational
from .groebner import GroebnerBasis, groebner_basis, normal_form
from .milnor import (
    MilnorAlgebra,
    QuasiHomogeneity,
    find_weights,
    hessian,
    is_quasi_homogeneous,
    jacobian_ideal,
    localize_at_point,
    milnor_algebra,
    poly_det,
    rational_critical_points,
)
from .order import GREVLEX, LEX, MonomialOrder, order_from_name
from .parse import format_polynomial, parse_polynomial, parse_scalar
from .polynomial import Polynomial, default_names

__all__ = [
    "GaussianRational", "I", "ONE", "ZERO",
    "Polynomial", "default_names", "MonomialOrder", "LEX", "GREVLEX", "order_from_name",
    "GroebnerBasis", "groebner_basis", "normal_form",
    "MilnorAlgebra", "milnor_algebra", "jacobian_ideal", "localize_at_point",
    "is_quasi_homogeneous", "QuasiHomogeneity", "find_weights", "hessian", "poly_det",
    "rational_critical_points",
    "parse_polynomial", "parse_scalar", "format_polynomial",
]
