"""Exact polynomial arithmetic and ideal certificates."""

from .coeffs import FP, QQ, ZZ, CoeffRing
from .ideals import (
    RadicalCertificate,
    bezout_combination,
    combine,
    elimination_element,
    groebner,
    groebner_basis,
    ideal_contains_lex_monic,
    ideal_membership,
    radical_contains,
)
from .ops import (
    VariableChange,
    bareiss_det,
    is_lex_monic,
    lex_compare,
    normalize_variables,
    resultant,
    shift_last_variable,
)
from .poly import Poly, format_poly, parse_poly

__all__ = [
    "FP", "QQ", "ZZ", "CoeffRing", "Poly", "format_poly", "parse_poly",
    "VariableChange", "bareiss_det", "is_lex_monic", "lex_compare",
    "normalize_variables", "resultant", "shift_last_variable",
    "RadicalCertificate", "bezout_combination", "combine", "groebner",
    "groebner_basis", "elimination_element", "ideal_contains_lex_monic", "ideal_membership",
    "radical_contains",
]
