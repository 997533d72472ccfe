"""Canonical bases of U_q^- for simply-laced affine types via PBW and monomial bases.

Exact arithmetic over Q(q) throughout.  The pipeline is

    build_h -> enumerate_indices / total_order -> gram_matrix -> decompose

with ``strata`` providing the quiver-side combinatorics.
"""
__version__ = "0.1.0"

from .affine_root import BetaSequence, CartanDatum, build_h, cartan_datum, total_order_I
from .gram import gram_matrix, inner_product
from .monomial import MonomialWord, m_index
from .pbw_index import PBWIndex, enumerate_indices, total_order
from .qfield import LaurentPoly, RatFn
from .solver import DecompResult, DegenerateMonomials, canonical_in_pbw, decompose, verify_decomposition

__all__ = [
    "__version__",
    "BetaSequence",
    "CartanDatum",
    "build_h",
    "cartan_datum",
    "total_order_I",
    "gram_matrix",
    "inner_product",
    "MonomialWord",
    "m_index",
    "PBWIndex",
    "enumerate_indices",
    "total_order",
    "LaurentPoly",
    "RatFn",
    "DecompResult",
    "DegenerateMonomials",
    "canonical_in_pbw",
    "decompose",
    "verify_decomposition",
]
