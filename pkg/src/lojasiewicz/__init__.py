"""Exact real-algebraic tools and numerical estimators for Lojasiewicz-type
exponents of polynomial functions."""

__version__ = "0.1.0"

from .polyalg import Polynomial, PolynomialError, format_poly, parse_poly
from .realroots import IsolatingInterval, isolate_roots, thom_encode_roots
from .cad import cad2d, growth_check
from .formulas import Atom, And, Or, Not, FormulaError, PointSet, dist_1d, dist_to_finite
from .bounds import BoundDomainError, comparator_bounds, loja_bound
from .estimate import EstimationError, estimate_loja_on_curve, extremal_family

__all__ = [
    "Polynomial", "PolynomialError", "format_poly", "parse_poly",
    "IsolatingInterval", "isolate_roots", "thom_encode_roots",
    "cad2d", "growth_check",
    "Atom", "And", "Or", "Not", "FormulaError", "PointSet", "dist_1d", "dist_to_finite",
    "BoundDomainError", "comparator_bounds", "loja_bound",
    "EstimationError", "estimate_loja_on_curve", "extremal_family",
]
