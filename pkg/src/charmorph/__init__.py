"""Exact verification of homomorphism and characteristic-polynomial conditions
for linear maps k^d -> End(M)."""

from .algebra import AlgebraElement, LinearMap, apply, char_poly_element, min_poly_element, parse_linear_map
from .category import fixture, generated_algebra, irreducibility, search, signature
from .checks import (
    CheckReport,
    Violation,
    characteristic_check,
    is_algebra_homomorphism,
    minimal_characteristic_check,
    nc_characteristic_check,
    roots_of_unity_check,
    verify_root_ratio_lemma,
)
from .fields import QQ, Scalar, cyclotomic, cyclotomic_polynomial, prime, primitive_root_of_unity
from .matrix import Matrix, Subspace, char_poly, kernel, min_poly, spin_up
from .poly import Polynomial

__version__ = "0.1.0"

__all__ = [
    "AlgebraElement", "LinearMap", "apply", "char_poly_element", "min_poly_element", "parse_linear_map",
    "fixture", "generated_algebra", "irreducibility", "search", "signature",
    "CheckReport", "Violation", "characteristic_check", "is_algebra_homomorphism",
    "minimal_characteristic_check", "nc_characteristic_check", "roots_of_unity_check",
    "verify_root_ratio_lemma",
    "QQ", "Scalar", "cyclotomic", "cyclotomic_polynomial", "prime", "primitive_root_of_unity",
    "Matrix", "Subspace", "char_poly", "kernel", "min_poly", "spin_up", "Polynomial",
]
