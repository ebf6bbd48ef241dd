"""Exact rings: ZZ, QQ, GF(p), polynomials, number-ring quotients, localizations."""

from coverforge.ring.base import (
    GF,
    QQ,
    ZZ,
    CapabilityError,
    Elem,
    IntegerRing,
    NotInvertibleError,
    PrimeField,
    RationalField,
    Ring,
    RingError,
    RingMismatchError,
)
from coverforge.ring.extensions import Localization, QuotientRing
from coverforge.ring.matrix import Matrix
from coverforge.ring.parse import ParseError, parse_element, parse_ring
from coverforge.ring.poly import PolynomialRing
from coverforge.ring.snf import elementary_divisors, left_kernel_rows, smith_normal_form, solve_integer

__all__ = [
    "GF", "QQ", "ZZ", "CapabilityError", "Elem", "IntegerRing", "NotInvertibleError",
    "PrimeField", "RationalField", "Ring", "RingError", "RingMismatchError",
    "Localization", "QuotientRing", "Matrix", "ParseError", "parse_element", "parse_ring",
    "PolynomialRing", "elementary_divisors", "left_kernel_rows", "smith_normal_form",
    "solve_integer",
]
