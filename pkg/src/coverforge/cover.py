"""Building data of diagonalizable covers with trivialized line bundles.

A building datum over a ring ``R`` is a table ``s[a, b]`` of ring elements
satisfying the cocycle identities in ``(R, *)``; the cover algebra is the free
``R``-module on ``v_a`` (``a`` in ``A``) with ``v_a v_b = s[a, b] v_{a+b}``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass

from coverforge.cocycle import (
    Cocycle,
    CocycleError,
    Naturals,
    NaturalVectors,
    RingMultiplicative,
    Violation,
    pardini_epsilon,
    cyclic_pardini,
    split_pair_key,
    validate,
)
from coverforge.group import AbelianGroup, GroupHom
from coverforge.ring import QQ, Matrix, PolynomialRing, Ring, parse_ring


class CoverError(ValueError):
    pass


class BoundExceeded(CoverError):
    """No power of the prime within the bound is divisible by the section."""


class BuildingDatum:
    def __init__(self, A: AbelianGroup, R: Ring, sections: Cocycle):
        if not isinstance(sections.target, RingMultiplicative) or sections.target.ring != R:
            raise CoverError("sections must be a cocycle into the multiplicative monoid of R")
        if sections.A != A:
            raise CoverError("sections are indexed by a different group")
        self.A = A
        self.R = R
        self.sections = sections

    @classmethod
    def from_table(cls, A: AbelianGroup, R: Ring, entries: dict) -> BuildingDatum:
        """``entries`` maps nonzero pairs to ring elements (or strings); ``s[0, a] = 1``."""
        t = RingMultiplicative(R)
        conv = {k: (R(v) if isinstance(v, (str, int)) else v) for k, v in entries.items()}
        return cls(A, R, Cocycle.from_nonzero(A, t, conv))

    @classmethod
    def from_function(cls, A: AbelianGroup, R: Ring, fn) -> BuildingDatum:
        return cls(A, R, Cocycle.from_function(A, RingMultiplicative(R), fn))

    @classmethod
    def trivial(cls, A: AbelianGroup, R: Ring) -> BuildingDatum:
        return cls.from_function(A, R, lambda a, b: R.one)

    def s(self, a, b):
        return self.sections(a, b)

    def table(self) -> dict:
        """Nonzero-pair entries ``(a, b) -> s[a, b]`` with ``a <= b``."""
        return self.sections.nonzero_table()

    def entries(self) -> list:
        return list(self.table().values())

    def __eq__(self, other):
        return isinstance(other, BuildingDatum) and self.A == other.A and self.sections == other.sections

    def __repr__(self):
        A = self.A
        body = ", ".join(f"s[{A.format(a)},{A.format(b)}]={v}" for (a, b), v in self.table().items())
        return f"BuildingDatum({A} over {self.R.describe()}: {body})"

    def algebra(self) -> CoverAlgebra:
        return CoverAlgebra(self)

    def to_json(self) -> dict:
        A = self.A
        return {
            "group": A.to_json(),
            "ring": self.R.describe(),
            "sections": {f"{A.format(a)},{A.format(b)}": str(v) for (a, b), v in self.table().items()},
        }


def datum_from_json(data) -> BuildingDatum:
    if isinstance(data, str):
        data = json.loads(data)
    unknown = set(data) - {"group", "ring", "sections"}
    if unknown:
        raise ValueError(f"unknown fields in building datum: {sorted(unknown)}")
    for k in ("group", "ring", "sections"):
        if k not in data:
            raise ValueError(f"building datum needs a '{k}' field")
    A = AbelianGroup.from_json(data["group"])
    R = parse_ring(data["ring"])
    entries = {}
    for key, val in data["sections"].items():
        a, b = split_pair_key(A, key)
        if a == A.zero or b == A.zero:
            raise ValueError(f"entry {key!r}: sections with a zero index are fixed to 1")
        entries[(a, b)] = R(str(val))
    return BuildingDatum.from_table(A, R, entries)


class CoverAlgebra:
    """``R[v_a : a in A]`` with ``v_a v_b = s[a, b] v_{a+b}``; elements are coefficient lists."""

    def __init__(self, datum: BuildingDatum):
        self.datum = datum
        self.A = datum.A
        self.R = datum.R
        self.dim = datum.A.order

    def basis(self, a) -> list:
        v = [self.R.zero] * self.dim
        v[self.A.index(a)] = self.R.one
        return v

    def one(self) -> list:
        return self.basis(self.A.zero)

    def mul(self, x, y) -> list:
        A, d = self.A, self.datum
        out = [self.R.zero] * self.dim
        els = A.elements
        for i, c in enumerate(x):
            if c.is_zero():
                continue
            for j, e in enumerate(y):
                if e.is_zero():
                    continue
                k = A.index(A.add(els[i], els[j]))
                out[k] = out[k] + c * e * d.s(els[i], els[j])
        return out

    def trace(self, x):
        """Trace of multiplication by ``x`` on the basis ``v_a``."""
        total = self.R.zero
        for a in self.A:
            prod = self.mul(x, self.basis(a))
            total = total + prod[self.A.index(a)]
        return total

    def trace_matrix(self) -> Matrix:
        els = self.A.elements
        rows = [[self.trace(self.mul(self.basis(a), self.basis(b))) for b in els] for a in els]
        return Matrix(self.R, rows)

    def check_associative(self):
        """Compare ``(v_a v_b) v_c`` with ``v_a (v_b v_c)`` and ``v_a v_b`` with ``v_b v_a``."""
        A = self.A
        for a in A:
            for b in A:
                ab = self.mul(self.basis(a), self.basis(b))
                if ab != self.mul(self.basis(b), self.basis(a)):
                    return ("commutativity", (a, b))
                for c in A:
                    left = self.mul(ab, self.basis(c))
                    right = self.mul(self.basis(a), self.mul(self.basis(b), self.basis(c)))
                    if left != right:
                        return ("associativity", (a, b, c))
        return None


def validate_datum(d: BuildingDatum) -> Violation | None:
    """Cocycle identities in ``(R, *)``, cross-checked against associativity of the algebra."""
    v = validate(d.sections)
    oracle = d.algebra().check_associative()
    if (v is None) != (oracle is None):
        raise AssertionError(f"cocycle check ({v}) and algebra check ({oracle}) disagree")
    return v


def is_torsor(d: BuildingDatum) -> bool:
    return all(s.is_unit() for s in d.entries())


def wedge(d1: BuildingDatum, d2: BuildingDatum, phi1: GroupHom, phi2: GroupHom) -> BuildingDatum:
    if d1.R != d2.R:
        raise CoverError(f"ring mismatch: {d1.R.describe()} vs {d2.R.describe()}")
    if phi1.source != phi2.source or phi1.target != d1.A or phi2.target != d2.A:
        raise CoverError("homomorphisms must share a source and land in the data's groups")
    return BuildingDatum.from_function(
        phi1.source, d1.R, lambda a, b: d1.s(phi1(a), phi1(b)) * d2.s(phi2(a), phi2(b))
    )


def wedge_same(d1: BuildingDatum, d2: BuildingDatum) -> BuildingDatum:
    """Wedge along identities (both data over the same group)."""
    if d1.A != d2.A:
        raise CoverError("data over different groups need explicit homomorphisms")
    ident = GroupHom.identity(d1.A)
    return wedge(d1, d2, ident, ident)


def inverse_torsor(d: BuildingDatum) -> BuildingDatum:
    if not is_torsor(d):
        raise CoverError("only torsors have an inverse")
    return BuildingDatum.from_function(d.A, d.R, lambda a, b: d.s(a, b).inverse())


def is_trivial(d: BuildingDatum) -> bool:
    return all(s == d.R.one for s in d.entries())


def induced(d: BuildingDatum, psi: GroupHom) -> BuildingDatum:
    """``s'(a, b) = s(psi a, psi b)`` on the source of ``psi``."""
    if psi.target != d.A:
        raise CoverError("homomorphism must land in the datum's group")
    return BuildingDatum.from_function(psi.source, d.R, lambda a, b: d.s(psi(a), psi(b)))


def subgroup_embedding(A: AbelianGroup, subset) -> GroupHom:
    """An injective ``GroupHom`` from a product of cyclic groups onto ``subset``."""
    S = sorted({A.elem(g) for g in subset}, key=A.index)
    if not A.is_subgroup(S):
        raise CoverError("subset is not closed under the group operation")
    n = len(S)
    for orders in _invariant_factor_lists(n):
        by_order = {k: [g for g in S if A.order_of(g) == k] for k in set(orders)}
        for gens in itertools.product(*(by_order[k] for k in orders)):
            B = AbelianGroup(orders)
            hom = GroupHom(B, A, gens)
            if len({hom(b) for b in B}) == n:
                return hom
    raise AssertionError("no cyclic decomposition found")


def _invariant_factor_lists(n: int):
    """Sequences ``d_1 | d_2 | ...`` (all > 1) with product ``n``; ``[]`` for ``n = 1``."""
    if n == 1:
        yield ()
        return

    def rec(rest, prev):
        if rest == 1:
            yield ()
            return
        for d in range(prev, rest + 1):
            if rest % d == 0 and d % prev == 0 and d > 1:
                for tail in rec(rest // d, d):
                    yield (d,) + tail

    yield from rec(n, 1)


def quotient_sub(d: BuildingDatum, subset) -> BuildingDatum:
    """Restriction of the table to a subgroup (given as a subset or an embedding)."""
    emb = subset if isinstance(subset, GroupHom) else subgroup_embedding(d.A, subset)
    return induced(d, emb)


# -- discriminants -------------------------------------------------------------------
def discriminant_formula(d: BuildingDatum):
    """``|A|^|A| * prod_a s[a, -a]``."""
    A, R = d.A, d.R
    out = R(A.order) ** A.order
    for a in A:
        out = out * d.s(a, A.neg(a))
    return out


def discriminant_trace(d: BuildingDatum):
    """Determinant of the trace pairing ``Tr(v_a v_b)``."""
    return d.algebra().trace_matrix().det()


def discriminant_obstruction(order: int, disc: int) -> bool:
    """True if ``order^order`` does not divide ``disc``: no cover of that rank has that discriminant."""
    return disc % (order ** order) != 0


# -- valuations and cocycles -----------------------------------------------------------
@dataclass(frozen=True)
class Valuation:
    """``v(r) = max{k : t^k | r}`` for a declared prime element ``t``."""

    t: object

    def __call__(self, r) -> int:
        R = self.t.ring
        if r.is_zero():
            raise CoverError("valuation of zero is infinite")
        k = 0
        while True:
            q = R.divides(self.t, r)
            if q is None:
                return k
            r, k = q, k + 1


def ord_section(d: BuildingDatum, v: Valuation, a, b) -> int:
    return v(d.s(a, b))


def ideal_quotient_ord(d: BuildingDatum, t, a, b, bound: int) -> int:
    """Least ``n <= bound`` with ``s[a, b] | t^n``."""
    s = d.s(a, b)
    R = d.R
    power = R.one
    for n in range(bound + 1):
        if R.divides(s, power) is not None:
            return n
        power = power * t
    raise BoundExceeded(f"s = {s} divides no power t^n with n <= {bound}")


def cover_cocycle(d: BuildingDatum, valuations) -> Cocycle:
    """``(a, b) -> (v_i(s[a, b]))_i``; a single valuation gives an N-valued cocycle."""
    vals = list(valuations) if isinstance(valuations, (list, tuple)) else [valuations]
    vals = [v if isinstance(v, Valuation) else Valuation(v) for v in vals]
    if len(vals) == 1:
        return Cocycle.from_function(d.A, Naturals(), lambda a, b: vals[0](d.s(a, b)))
    return Cocycle.from_function(d.A, NaturalVectors(len(vals)), lambda a, b: tuple(v(d.s(a, b)) for v in vals))


def monomial_cover(R: Ring, t, f: Cocycle) -> BuildingDatum:
    """``s[a, b] = t^f(a, b)``; ``t`` may be a list when ``f`` is N^k-valued."""
    if (v := validate(f)) is not None:
        raise CocycleError(f"not a 2-cocycle: {v}")
    ts = list(t) if isinstance(t, (list, tuple)) else None
    if ts is None:
        return BuildingDatum.from_function(f.A, R, lambda a, b: R(t) ** f(a, b))

    def entry(a, b):
        out = R.one
        for ti, k in zip(ts, f(a, b)):
            out = out * R(ti) ** k
        return out

    return BuildingDatum.from_function(f.A, R, entry)


def standard_cyclic(n: int, psi: int, base: Ring | None = None) -> BuildingDatum:
    """``monomial_cover(k[s], s, eps^{Z/n, psi})``."""
    base = base or PolynomialRing(QQ, ["s"])
    return monomial_cover(base, base.gen(0), pardini_epsilon(cyclic_pardini(n, psi)))
