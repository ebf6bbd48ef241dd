"""Finitely presented commutative monoids and bounded property checks."""

from coverforge.fpmonoid.affine import AffineMonoid, affine_membership
from coverforge.fpmonoid.completion import CompletionError, RewriteSystem, Rule, complete, order_key, weighted_revlex_key
from coverforge.fpmonoid.morphisms import (
    FGMonoid,
    MonoidHom,
    affine,
    check_flat_morphism,
    check_integral_morphism,
    check_kummer,
    hom_from_presentation,
    minimal_fiber,
    presented,
)
from coverforge.fpmonoid.presentation import MonoidPresentation
from coverforge.fpmonoid.properties import (
    GradingCert,
    Groupification,
    cancellation_certificate,
    groupification,
    is_integral_up_to,
    sharp_by_grading,
    unit_search,
)

__all__ = [
    "AffineMonoid", "affine_membership", "CompletionError", "RewriteSystem", "Rule", "complete",
    "order_key", "FGMonoid", "MonoidHom", "affine", "check_flat_morphism", "check_integral_morphism",
    "check_kummer", "hom_from_presentation", "minimal_fiber", "presented", "MonoidPresentation",
    "GradingCert", "Groupification", "groupification", "is_integral_up_to", "sharp_by_grading",
    "unit_search", "cancellation_certificate", "weighted_revlex_key",
]
