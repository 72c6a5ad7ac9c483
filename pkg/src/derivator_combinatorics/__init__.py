"""
derivator-combinatorics: finite index categories of derivator K-theory, machine-checked.

This package builds the finite posets, functors, ordinal maps and truncated
simplicial sets that the additivity argument for derivator K-theory rests
on, and verifies every combinatorial claim about them exhaustively.
"""

from derivator_combinatorics.builder import CategoryBuilder
from derivator_combinatorics.corpus import VerificationReport, VerifyOptions, verify_corpus
from derivator_combinatorics.errors import DerivatorCombinatoricsError
from derivator_combinatorics.fincat import FinCat, Functor, NatTrans, build_fincat, build_poset
from derivator_combinatorics.grothendieck import K0Presentation, k0_group, smith_normal_form
from derivator_combinatorics.simplicial import SSet, nerve, validate_sset

__version__ = "0.1.0"

__all__ = [
    "CategoryBuilder",
    "DerivatorCombinatoricsError",
    "FinCat",
    "Functor",
    "K0Presentation",
    "NatTrans",
    "SSet",
    "VerificationReport",
    "VerifyOptions",
    "build_fincat",
    "build_poset",
    "k0_group",
    "nerve",
    "smith_normal_form",
    "validate_sset",
    "verify_corpus",
]
