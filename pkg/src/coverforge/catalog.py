"""Named building data used throughout the tests and the ``verify-paper`` suite."""

from __future__ import annotations

from functools import lru_cache

from coverforge.cover import BuildingDatum
from coverforge.group import AbelianGroup
from coverforge.ring import QQ, ZZ, Localization, PolynomialRing, QuotientRing, Ring

GAUSSIAN = "ZZ[i]/(i^2+1)"
CYCLOTOMIC = "ZZ[i]/(i^2+1)[xi]/(xi^4+xi^3+xi^2+xi+1)"


def polynomial_ring(name: str = "s", base: Ring = QQ) -> PolynomialRing:
    return PolynomialRing(base, [name])


def nodal_mu3(base: Ring = QQ) -> BuildingDatum:
    """``x^2 = s y, y^2 = s x, x y = s^2`` over ``k[s]``: sections ``(s, s^2, s)``."""
    R = polynomial_ring("s", base)
    return BuildingDatum.from_table(AbelianGroup.cyclic(3), R, {(1, 1): "s", (1, 2): "s^2", (2, 2): "s"})


def sqrt_two() -> BuildingDatum:
    """``Z[x]/(x^2 - 2)`` as a datum over ``Z``."""
    return BuildingDatum.from_table(AbelianGroup.cyclic(2), ZZ, {(1, 1): 2})


def mu2(entry: str, var: str = "x", base: Ring = QQ) -> BuildingDatum:
    R = polynomial_ring(var, base)
    return BuildingDatum.from_table(AbelianGroup.cyclic(2), R, {(1, 1): entry})


@lru_cache(maxsize=None)
def gaussian() -> QuotientRing:
    return QuotientRing(ZZ, "i", [1, 0, 1])


@lru_cache(maxsize=None)
def cyclotomic() -> QuotientRing:
    """``Z[i, xi]`` with ``i^2 = -1`` and ``xi^4 + xi^3 + xi^2 + xi + 1 = 0``."""
    return QuotientRing(gaussian(), "xi", [1, 1, 1, 1, 1])


def cyclotomic_d():
    """The eigenvectors ``d_1, d_2, d_3`` of the Z/4-splitting of ``Z[1/2, i, xi]``."""
    R = cyclotomic()
    i, xi = R("i"), R("xi")
    d1 = (xi - xi ** 4) + (xi ** 2 - xi ** 3) * i
    d2 = (xi + xi ** 4) - (xi ** 2 + xi ** 3)
    d3 = (xi - xi ** 4) - (xi ** 2 - xi ** 3) * i
    return d1, d2, d3


# d_1 d_3 = (xi - xi^4)^2 + (xi^2 - xi^3)^2 = -5, so s[1,3] is -5 (with +5 the
# table fails the cocycle identity at (1, 1, 2)).
CYCLOTOMIC_SECTIONS = {(1, 1): "-1-2*i", (1, 2): "1+2*i", (1, 3): "-5", (2, 2): "5", (2, 3): "1-2*i", (3, 3): "-1+2*i"}


def cyclotomic_datum(invert: int = 2) -> BuildingDatum:
    """The Z/4 datum of the fifth cyclotomic integers over ``Z[i][1/invert]``."""
    R = Localization(gaussian(), invert)
    return BuildingDatum.from_table(AbelianGroup.cyclic(4), R, dict(CYCLOTOMIC_SECTIONS))


def cyclotomic_products():
    """``d_a d_b`` against ``s[a, b] d_{a+b}`` (``d_0 = 1``) inside ``Z[i, xi]``.

    Returns ``{(a, b): (product, expected)}``.
    """
    R = cyclotomic()
    ds = (R.one,) + cyclotomic_d()
    out = {}
    for (a, b), s in CYCLOTOMIC_SECTIONS.items():
        out[(a, b)] = (ds[a] * ds[b], R(s) * ds[(a + b) % 4])
    return out


# the ring of integers of Q(zeta_5) has discriminant 5^3
CYCLOTOMIC_FIVE_DISCRIMINANT = 125


# -- non-reduced covers over finite algebras ------------------------------------


def klein_base():
    """``F_2[a,b,c] / ((a,b,c)^3 + (ab+ac+bc))`` with basis 1, a, b, c, a2, b2, c2, ab, ac."""
    from coverforge.hopf.algebra import monomial_algebra

    monos = [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1), (2, 0, 0), (0, 2, 0), (0, 0, 2), (1, 1, 0), (1, 0, 1)]

    def reduce(e):
        if sum(e) >= 3:
            return {}
        if e == (0, 1, 1):  # bc = ab + ac
            return {(1, 1, 0): 1, (1, 0, 1): 1}
        return {e: 1}

    return monomial_algebra(2, "abc", monos, reduce)


def klein_datum():
    """The rank-4 ``(Z/2)^2``-cover with ``x10^2 = ab``, ``x01^2 = ac``, ``x11^2 = ab+ac``.

    Mixed products are ``x10 x01 = a x11``, ``x10 x11 = b x01``, ``x01 x11 = c x10``.
    """
    R = klein_base().ring()
    A = AbelianGroup((2, 2))
    entries = {
        ((1, 0), (1, 0)): "ab",
        ((0, 1), (0, 1)): "ac",
        ((1, 1), (1, 1)): "ab+ac",
        ((0, 1), (1, 0)): "a",
        ((1, 0), (1, 1)): "b",
        ((0, 1), (1, 1)): "c",
    }
    return BuildingDatum.from_table(A, R, entries)


def klein_witness():
    """Stabilizer structure, its ideal and ``g = 1 + ac([1,0] - 1)``."""
    from coverforge.hopf.structure import stabilizer_ideal

    S, I = stabilizer_ideal(klein_datum())
    t = S.base.vec("ac")
    g = S.element({(0, 0): S.base.one() - t, (1, 0): t})
    return S, I, g


def dual_numbers(p: int = 3):
    """``F_p[a]/(a^2)``."""
    from coverforge.hopf.algebra import monomial_algebra

    return monomial_algebra(p, "a", [(0,), (1,)], lambda e: {e: 1} if e[0] < 2 else {})


def dual_numbers_sqrt(p: int = 3):
    """The ``Z/2``-cover ``x^2 = a`` of ``F_p[a]/(a^2)``."""
    R = dual_numbers(p).ring()
    return BuildingDatum.from_table(AbelianGroup.cyclic(2), R, {(1, 1): "a"})
