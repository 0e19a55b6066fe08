"""Finite p-groups, their modular group algebras over small finite fields, and
the invariant battery for deciding group-algebra (non-)isomorphism at desk
scale, with verified witnesses."""

from .caps import Caps, DEFAULT_CAPS
from .errors import CapExceeded, SpecParseError
from .families import build, paper_pair
from .gfq import FiniteField, Scalar, Subspace, echelon_basis, make_field, subspace_combine
from .groups import FiniteGroup, Subgroup
from .invariants import Fingerprint, Verdict, compare, fingerprint
from .iso import IsoWitness, NotIsomorphic, group_isomorphic, nilpotent_algebra_iso, verify_witness
from .modalg import GroupAlgebra, Ideal, QuotientAlgebra, group_algebra
from .words import Presentation, parse_word, print_word, todd_coxeter

__all__ = [
    "Caps", "DEFAULT_CAPS", "CapExceeded", "SpecParseError",
    "build", "paper_pair",
    "FiniteField", "Scalar", "Subspace", "echelon_basis", "make_field", "subspace_combine",
    "FiniteGroup", "Subgroup",
    "Fingerprint", "Verdict", "compare", "fingerprint",
    "IsoWitness", "NotIsomorphic", "group_isomorphic", "nilpotent_algebra_iso", "verify_witness",
    "GroupAlgebra", "Ideal", "QuotientAlgebra", "group_algebra",
    "Presentation", "parse_word", "print_word", "todd_coxeter",
]

__version__ = "0.1.0"
