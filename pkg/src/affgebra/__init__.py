"""Exact computations with Lie affgebras on r3, r3(lambda) and r2 + C.

The scalar field is the rationals; set ``AFFGEBRA_PURE_PYTHON=1`` before
import to use ``fractions.Fraction`` instead of ``gmpy2.mpq``.
"""

from .affine import Affgebra, aff_bracket, check_axioms, tangent_lie
from .errors import (
    AffgebraError,
    BadParameter,
    CanonicalizationError,
    DimensionMismatch,
    FieldExtensionRequired,
    InvalidPair,
    NotAutomorphism,
    NotCatalogAlgebra,
    SingularMatrix,
)
from .exactnum import Q, RationalMatrix, format_rational, parse_rational
from .genderiv import GenDerivPair, PairSpace, pair_from_params, solve_pairs, verify_pair
from .isoclass import (
    CanonicalForm,
    IsoMove,
    apply_iso,
    canonicalize,
    gauge_reduce,
    invariants,
    orbit_search,
)
from .liecore import LieAlgebra, automorphisms, catalog

__version__ = "0.1.0"

__all__ = [
    "Affgebra", "AffgebraError", "BadParameter", "CanonicalForm", "CanonicalizationError",
    "DimensionMismatch", "FieldExtensionRequired", "GenDerivPair", "InvalidPair", "IsoMove",
    "LieAlgebra", "NotAutomorphism", "NotCatalogAlgebra", "PairSpace", "Q", "RationalMatrix",
    "SingularMatrix", "aff_bracket", "apply_iso", "automorphisms", "canonicalize", "catalog",
    "check_axioms", "format_rational", "gauge_reduce", "invariants", "orbit_search",
    "pair_from_params", "parse_rational", "solve_pairs", "tangent_lie", "verify_pair",
]
