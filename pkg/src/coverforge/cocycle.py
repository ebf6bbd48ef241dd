"""Symmetric normalized 2-cocycles of a finite abelian group.

A cocycle takes values in a commutative monoid written additively; the
multiplicative monoid of a ring is one such target (building data are
cocycles into ``(R, *)``).  Tables are stored for ``index(a) <= index(b)``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any

from coverforge.group import AbelianGroup, GroupHom


class CocycleError(ValueError):
    pass


# -- targets -------------------------------------------------------------------
class Target:
    """Commutative monoid interface used by cocycles."""

    tag = "monoid"

    def identity(self):
        raise NotImplementedError

    def op(self, a, b):
        raise NotImplementedError

    def eq(self, a, b) -> bool:
        return a == b

    def coerce(self, v):
        return v

    def format(self, a) -> str:
        return str(a)

    def parse(self, text: str):
        raise NotImplementedError

    def key(self):
        return (self.tag,)

    def __eq__(self, other):
        return isinstance(other, Target) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())


class Naturals(Target):
    tag = "NN"

    def identity(self):
        return 0

    def op(self, a, b):
        return a + b

    def coerce(self, v):
        v = int(v)
        if v < 0:
            raise CocycleError(f"{v} is not a natural number")
        return v

    def parse(self, text):
        return self.coerce(text)

    def __repr__(self):
        return "NN"


class NaturalVectors(Target):
    """``N^k`` (one coordinate per prime divisor, say)."""

    tag = "NN^k"

    def __init__(self, k: int):
        self.k = k

    def key(self):
        return (self.tag, self.k)

    def identity(self):
        return (0,) * self.k

    def op(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def coerce(self, v):
        v = tuple(int(x) for x in v)
        if len(v) != self.k or min(v, default=0) < 0:
            raise CocycleError(f"{v} is not in N^{self.k}")
        return v

    def parse(self, text):
        return self.coerce(x for x in text.strip("()[] ").split(",") if x.strip())

    def __repr__(self):
        return f"NN^{self.k}"


class IntegerVectors(Target):
    """``Z^k``; used for images in a lattice."""

    tag = "ZZ^k"

    def __init__(self, k: int):
        self.k = k

    def key(self):
        return (self.tag, self.k)

    def identity(self):
        return (0,) * self.k

    def op(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def coerce(self, v):
        return tuple(int(x) for x in v)


class MonoidTarget(Target):
    """A finitely generated monoid given through :class:`FGMonoid`."""

    tag = "fg-monoid"

    def __init__(self, M):
        self.M = M

    def key(self):
        return (self.tag, id(self.M))

    def identity(self):
        return self.M.zero()

    def op(self, a, b):
        return self.M.add(a, b)

    def eq(self, a, b):
        return self.M.equal(a, b)

    def format(self, a):
        return self.M.format(a)


class RingMultiplicative(Target):
    """``(R, *)`` with identity 1 and ring equality."""

    tag = "ring"

    def __init__(self, ring):
        self.ring = ring

    def key(self):
        return (self.tag, self.ring.key())

    def identity(self):
        return self.ring.one

    def op(self, a, b):
        return a * b

    def eq(self, a, b):
        return a == b

    def coerce(self, v):
        return self.ring(v)

    def parse(self, text):
        return self.ring(text)

    def format(self, a):
        return str(a)

    def __repr__(self):
        return f"({self.ring.describe()}, *)"


# -- cocycles ------------------------------------------------------------------
@dataclass(frozen=True)
class Violation:
    axiom: int
    witness: tuple
    detail: str = ""

    def __str__(self):
        return f"axiom {self.axiom} fails at {self.witness}: {self.detail}"


class Cocycle:
    def __init__(self, A: AbelianGroup, target: Target, table: dict):
        self.A = A
        self.target = target
        self._table = {}
        for (a, b), v in table.items():
            a, b = A.elem(a), A.elem(b)
            if A.index(a) > A.index(b):
                a, b = b, a
            key = (a, b)
            v = target.coerce(v)
            if key in self._table and not target.eq(self._table[key], v):
                raise CocycleError(f"conflicting entries for {key}")
            self._table[key] = v
        missing = [(a, b) for a, b in self.pairs() if (a, b) not in self._table]
        if missing:
            raise CocycleError(f"table is missing entries, e.g. {missing[0]}")

    @classmethod
    def from_nonzero(cls, A: AbelianGroup, target: Target, entries: dict, default=None) -> Cocycle:
        """Entries with a zero index default to the identity; others may use ``default``."""
        table = {}
        for a, b in cls._pairs(A):
            table[(a, b)] = target.identity() if (a == A.zero or b == A.zero) else default
        for (a, b), v in entries.items():
            a, b = A.elem(a), A.elem(b)
            if A.index(a) > A.index(b):
                a, b = b, a
            table[(a, b)] = v
        if any(v is None for v in table.values()):
            missing = next(k for k, v in table.items() if v is None)
            raise CocycleError(f"no value for {missing}")
        return cls(A, target, table)

    @classmethod
    def zero(cls, A: AbelianGroup, target: Target) -> Cocycle:
        return cls.from_nonzero(A, target, {}, default=target.identity())

    @classmethod
    def from_function(cls, A: AbelianGroup, target: Target, fn) -> Cocycle:
        return cls(A, target, {(a, b): fn(a, b) for a, b in cls._pairs(A)})

    @staticmethod
    def _pairs(A):
        els = A.elements
        return [(els[i], els[j]) for i in range(len(els)) for j in range(i, len(els))]

    def pairs(self):
        return self._pairs(self.A)

    def __call__(self, a, b):
        A = self.A
        a, b = A.elem(a), A.elem(b)
        if A.index(a) > A.index(b):
            a, b = b, a
        return self._table[(a, b)]

    def table(self) -> dict:
        return dict(self._table)

    def nonzero_table(self) -> dict:
        z = self.A.zero
        return {k: v for k, v in self._table.items() if z not in k}

    def __eq__(self, other):
        if not isinstance(other, Cocycle) or self.A != other.A or self.target != other.target:
            return False
        return all(self.target.eq(self._table[k], other._table[k]) for k in self._table)

    def __hash__(self):
        return hash((self.A, tuple(sorted(self._table))))

    def __repr__(self):
        A, t = self.A, self.target
        body = ", ".join(
            f"({A.format(a)},{A.format(b)}): {t.format(v)}" for (a, b), v in self.nonzero_table().items()
        )
        return f"Cocycle[{A} -> {t!r}]{{{body}}}"

    def validate(self) -> Violation | None:
        return validate(self)

    def __add__(self, other: Cocycle) -> Cocycle:
        return add(self, other)

    def pullback(self, phi: GroupHom) -> Cocycle:
        """``(a, b) -> f(phi a, phi b)`` on the source of ``phi``."""
        if phi.target != self.A:
            raise CocycleError("homomorphism does not land in the cocycle's group")
        return Cocycle.from_function(phi.source, self.target, lambda a, b: self(phi(a), phi(b)))

    def map_values(self, target: Target, fn) -> Cocycle:
        return Cocycle(self.A, target, {k: fn(v) for k, v in self._table.items()})

    # -- JSON ------------------------------------------------------------------
    def to_json(self) -> dict:
        A = self.A
        tag = "NN" if isinstance(self.target, Naturals) else (
            f"ring:{self.target.ring.describe()}" if isinstance(self.target, RingMultiplicative) else self.target.tag
        )
        return {
            "group": A.to_json(),
            "target": tag,
            "table": {f"{A.format(a)},{A.format(b)}": self.target.format(v) for (a, b), v in self.nonzero_table().items()},
        }


def validate(f: Cocycle) -> Violation | None:
    """Check normalization and the exchange identity on every triple.

    Symmetry holds by construction of the table.
    """
    A, t = f.A, f.target
    e = t.identity()
    for lam in A:
        if not t.eq(f(A.zero, lam), e):
            return Violation(1, (A.zero, lam), f"f(0,{A.format(lam)}) = {t.format(f(A.zero, lam))}")
    for a in A:
        for b in A:
            fab_sum = f(a, b)
            ab = A.add(a, b)
            for c in A:
                lhs = t.op(fab_sum, f(ab, c))
                rhs = t.op(f(b, c), f(A.add(b, c), a))
                if not t.eq(lhs, rhs):
                    return Violation(3, (a, b, c), f"{t.format(lhs)} != {t.format(rhs)}")
    return None


def add(f: Cocycle, g: Cocycle) -> Cocycle:
    if f.A != g.A:
        raise CocycleError("cocycles over different groups")
    if f.target != g.target:
        raise CocycleError("cocycles with different targets")
    t = f.target
    return Cocycle(f.A, t, {k: t.op(f._table[k], g._table[k]) for k in f._table})


# -- free extensions -------------------------------------------------------------
class FreeExtension:
    """``P x_f A``: pairs ``(p, a)`` with ``(p,a)+(p',a') = (p+p'+f(a,a'), a+a')``.

    ``gamma(p) = (p, 0)`` and ``iota(a) = (0, a)``; the bijection
    ``P x A -> E, (p, a) -> gamma(p) + iota(a)`` is the identity on pairs.
    """

    def __init__(self, f: Cocycle):
        if (v := validate(f)) is not None:
            raise CocycleError(f"not a 2-cocycle: {v}")
        self.cocycle = f
        self.A = f.A
        self.P = f.target

    def zero(self):
        return (self.P.identity(), self.A.zero)

    def add(self, x, y):
        (p, a), (q, b) = x, y
        P = self.P
        return (P.op(P.op(p, q), self.cocycle(a, b)), self.A.add(a, b))

    def eq(self, x, y) -> bool:
        return x[1] == y[1] and self.P.eq(x[0], y[0])

    def gamma(self, p):
        return (p, self.A.zero)

    def iota(self, a):
        return (self.P.identity(), self.A.elem(a))

    def decompose(self, x):
        """``(p, a)`` with ``x = gamma(p) + iota(a)``."""
        p, a = x
        return p, a

    def quotient(self, x):
        return x[1]


def extension_from_cocycle(f: Cocycle) -> FreeExtension:
    return FreeExtension(f)


def cocycle_from_extension(E) -> Cocycle:
    """Read off ``f(a,b)`` from ``iota(a) + iota(b) = gamma(p) + iota(a+b)``."""
    A = E.A
    table = {}
    for a, b in Cocycle._pairs(A):
        s = E.add(E.iota(a), E.iota(b))
        p, c = E.decompose(s)
        if c != A.add(a, b):
            raise CocycleError("NOT-FREE: basis decomposition lands in the wrong degree")
        if not E.eq(E.add(E.gamma(p), E.iota(c)), s):
            raise CocycleError("NOT-FREE: decomposition does not reproduce the element")
        table[(a, b)] = p
    return Cocycle(A, E.P, table)


def extensions_isomorphic(E1, E2, samples) -> bool:
    """Compare additions of two extensions with the same P and A on sample pairs."""
    for x in samples:
        for y in samples:
            if not E1.eq(E1.add(x, y), E2.add(x, y)):
                return False
    return True


# -- Pardini epsilon ---------------------------------------------------------------
@dataclass(frozen=True)
class PardiniData:
    """A surjection ``phi: A -> Z/n`` and a generator ``psi`` of ``Z/n``."""

    A: AbelianGroup
    phi: GroupHom
    psi: int

    def __post_init__(self):
        N = self.phi.target
        if len(N.orders) != 1:
            raise CocycleError("the quotient must be cyclic")
        n = N.orders[0]
        if N.order_of((self.psi % n,)) != n:
            raise CocycleError(f"{self.psi} does not generate Z/{n}")
        if not self.phi.is_surjective():
            raise CocycleError("the map onto the cyclic group must be surjective")

    @property
    def n(self) -> int:
        return self.phi.target.orders[0]

    def i(self, lam) -> int:
        target = self.phi(lam)[0]
        return next(a for a in range(self.n) if (a * self.psi - target) % self.n == 0)


def pardini_epsilon(d: PardiniData) -> Cocycle:
    """``eps(a, b) = 0`` if ``i(a) + i(b) < n`` else 1."""
    f = Cocycle.from_function(d.A, Naturals(), lambda a, b: 0 if d.i(a) + d.i(b) < d.n else 1)
    assert validate(f) is None, "epsilon failed the cocycle identity"
    return f


def cyclic_pardini(n: int, psi: int) -> PardiniData:
    A = AbelianGroup.cyclic(n)
    return PardiniData(A, GroupHom.identity(A), psi)


# -- file format ------------------------------------------------------------------
def cocycle_from_json(data: Any) -> Cocycle:
    from coverforge.ring import parse_ring

    if isinstance(data, str):
        data = json.loads(data)
    unknown = set(data) - {"group", "target", "table", "default_identity"}
    if unknown:
        raise ValueError(f"unknown fields in cocycle: {sorted(unknown)}")
    A = AbelianGroup.from_json(data["group"])
    tag = data.get("target", "NN")
    if tag == "NN":
        target: Target = Naturals()
    elif tag.startswith("ring:"):
        target = RingMultiplicative(parse_ring(tag[5:]))
    else:
        raise ValueError(f"unknown cocycle target {tag!r}")
    entries = {}
    for key, val in data.get("table", {}).items():
        a, b = split_pair_key(A, key)
        entries[(a, b)] = target.parse(str(val))
    default = target.identity() if data.get("default_identity") else None
    return Cocycle.from_nonzero(A, target, entries, default=default)


def split_pair_key(A: AbelianGroup, key: str):
    """Read ``"1,2"`` or ``"(1,0),(0,1)"`` or ``"10,01"`` as a pair of elements."""
    k = key.strip()
    if "(" in k:
        parts = [p for p in k.replace(" ", "").split("),") if p]
        if len(parts) != 2:
            raise ValueError(f"bad pair key {key!r}")
        return A.parse(parts[0] + ")"), A.parse(parts[1])
    parts = [p.strip() for p in k.split(",")]
    if len(parts) != 2:
        raise ValueError(f"bad pair key {key!r}")
    return A.parse(parts[0]), A.parse(parts[1])
