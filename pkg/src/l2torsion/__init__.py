"""Universal L²-torsion of free-group homomorphisms and sutured handlebodies."""

from .complex import (
    BasedComplex,
    ComplexError,
    TorsionValue,
    dualize,
    mapping_cylinder_complex,
    matrix_chain_search,
    presentation_complex,
    torsion,
    torsion_of_hom,
    unit_pivot_reduce,
    wh_element_equal,
)
from .fkdet import estimate_fk, fk_of_torsion
from .fox import fox_derivative, fox_jacobian
from .freegroup import FreeHom, Word, apply_hom, compose, parse_word
from .groupring import GroupRingElt, parse_element
from .laurent import LaurentFraction, LaurentPoly
from .leading import Character, delta, leading_complex, leading_elt, leading_matrix
from .matrix import GRMatrix, Matrix
from .oracle import Budget, certify
from .polytope import IntPolytope, PolytopeDiff, WhPolytope, poly_of_elt, thurston_dual_ball

__version__ = "0.1.0"

__all__ = [
    "BasedComplex",
    "Budget",
    "Character",
    "ComplexError",
    "FreeHom",
    "GRMatrix",
    "GroupRingElt",
    "IntPolytope",
    "LaurentFraction",
    "LaurentPoly",
    "Matrix",
    "PolytopeDiff",
    "TorsionValue",
    "WhPolytope",
    "Word",
    "apply_hom",
    "certify",
    "compose",
    "delta",
    "dualize",
    "estimate_fk",
    "fk_of_torsion",
    "fox_derivative",
    "fox_jacobian",
    "leading_complex",
    "leading_elt",
    "leading_matrix",
    "mapping_cylinder_complex",
    "matrix_chain_search",
    "parse_element",
    "parse_word",
    "poly_of_elt",
    "presentation_complex",
    "thurston_dual_ball",
    "torsion",
    "torsion_of_hom",
    "unit_pivot_reduce",
    "wh_element_equal",
]
