"""Finite algebras over prime fields, group algebras and group-like elements."""

from coverforge.hopf.algebra import AlgebraError, FiniteAlgebra, FiniteAlgebraRing, monomial_algebra
from coverforge.hopf.linalg import RowSpace
from coverforge.hopf.structure import (
    GroupAlgebraStructure,
    HopfViolation,
    IdealSubspace,
    SearchCapExceeded,
    base_directions,
    cover_algebra,
    grouplike_residue_compare,
    grouplike_search,
    ideal_closure,
    is_grouplike_mod,
    is_hopf_ideal,
    stabilizer_ideal,
)

__all__ = [
    "AlgebraError",
    "FiniteAlgebra",
    "FiniteAlgebraRing",
    "GroupAlgebraStructure",
    "HopfViolation",
    "IdealSubspace",
    "RowSpace",
    "SearchCapExceeded",
    "base_directions",
    "cover_algebra",
    "grouplike_residue_compare",
    "grouplike_search",
    "ideal_closure",
    "is_grouplike_mod",
    "is_hopf_ideal",
    "monomial_algebra",
    "stabilizer_ideal",
]
