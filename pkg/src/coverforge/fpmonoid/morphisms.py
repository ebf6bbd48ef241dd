"""Bounded checks for Kummer, integral and flat morphisms and minimal fibers.

All monoids here are handled through :class:`FGMonoid`: a zero, an addition, a
canonical key for equality, and a list of generators.  Elements of "degree"
``d`` are sums of at most ``d`` generators.
"""

from __future__ import annotations

from typing import Callable, Sequence

from coverforge.fpmonoid.affine import AffineMonoid
from coverforge.fpmonoid.presentation import MonoidPresentation
from coverforge.verdict import Verdict, failed, passed


class FGMonoid:
    """A finitely generated commutative monoid with decidable equality."""

    def __init__(self, zero, add: Callable, key: Callable, generators: Sequence, name: str = "M",
                 fmt: Callable | None = None):
        self._zero = zero
        self._add = add
        self._key = key
        self.generators = list(generators)
        self.name = name
        self._fmt = fmt or str
        self._cache = {}

    def zero(self):
        return self._zero

    def add(self, x, y):
        return self._add(x, y)

    def key(self, x):
        return self._key(x)

    def equal(self, x, y) -> bool:
        return self._key(x) == self._key(y)

    def format(self, x) -> str:
        return self._fmt(x)

    def multiple(self, n: int, x):
        acc = self._zero
        for _ in range(n):
            acc = self._add(acc, x)
        return acc

    def combine(self, word):
        """``sum word_i * generator_i``."""
        acc = self._zero
        for c, g in zip(word, self.generators):
            for _ in range(c):
                acc = self._add(acc, g)
        return acc

    def elements_up_to(self, degree: int) -> list:
        """Distinct elements of degree <= ``degree`` as ``(element, word)`` pairs.

        The word is one way of writing the element in the generators; the list
        is ordered by degree and then by discovery order (deterministic).
        """
        if degree in self._cache:
            return self._cache[degree]
        n = len(self.generators)
        zero_word = (0,) * n
        out = [(self._zero, zero_word)]
        seen = {self._key(self._zero)}
        frontier = out[:]
        for _ in range(degree):
            nxt = []
            for x, w in frontier:
                start = max((i for i, c in enumerate(w) if c), default=0)
                for i in range(start, n):
                    y = self._add(x, self.generators[i])
                    k = self._key(y)
                    if k in seen:
                        continue
                    seen.add(k)
                    w2 = list(w)
                    w2[i] += 1
                    nxt.append((y, tuple(w2)))
            out.extend(nxt)
            frontier = nxt
        self._cache[degree] = out
        return out


def presented(P: MonoidPresentation, name: str = "M") -> FGMonoid:
    gens = [P.normal_form(P.gen(i)) for i in range(P.rank)]
    return FGMonoid(P.zero(), P.add, P.normal_form, gens, name, P.format)


def affine(M: AffineMonoid, name: str = "M") -> FGMonoid:
    return FGMonoid(M.zero(), M.add, tuple, list(M.generators), name)


class MonoidHom:
    """A homomorphism given by generator images (or by an explicit function).

    When the source is a presentation, every relation is checked on
    construction.
    """

    def __init__(self, source: FGMonoid, target: FGMonoid, images=None, func: Callable | None = None,
                 relations=None):
        if images is None and func is None:
            raise ValueError("a homomorphism needs generator images or a function")
        self.source = source
        self.target = target
        self.images = list(images) if images is not None else None
        self.func = func
        if self.images is not None and len(self.images) != len(source.generators):
            raise ValueError("one image per source generator required")
        for u, v in relations or ():
            if not target.equal(self._on_word(u), self._on_word(v)):
                raise ValueError(f"relation {u} ~ {v} is not respected")

    def _on_word(self, word):
        acc = self.target.zero()
        for c, img in zip(word, self.images):
            for _ in range(c):
                acc = self.target.add(acc, img)
        return acc

    def apply(self, x, word=None):
        if self.func is not None:
            return self.func(x)
        if word is None:
            raise ValueError("generator-image homomorphisms need the source word")
        return self._on_word(word)


def hom_from_presentation(P: MonoidPresentation, target: FGMonoid, images, name="P") -> MonoidHom:
    return MonoidHom(presented(P, name), target, images, relations=P.relations)


def check_kummer(phi: MonoidHom, deg_bound: int, mult_bound: int) -> Verdict:
    src, tgt = phi.source, phi.target
    images = {}
    for x, w in src.elements_up_to(deg_bound):
        k = tgt.key(phi.apply(x, w))
        if k in images:
            return failed("NOT-INJECTIVE", witness=(images[k][0], x), bound=deg_bound)
        images[k] = (x, w)
    table = []
    for q in tgt.generators:
        hit = None
        for n in range(1, mult_bound + 1):
            k = tgt.key(tgt.multiple(n, q))
            if k in images:
                hit = (n, images[k][0])
                break
        if hit is None:
            return failed("NO-MULTIPLE", witness=q, bound=mult_bound,
                          detail=f"no multiple of {tgt.format(q)} up to {mult_bound} is hit")
        table.append((q, hit[0], hit[1]))
    return passed("KUMMER", bound=deg_bound, table=table, mult_bound=mult_bound)


def _decompositions(phi, P_elems, Q_elems):
    """For each q: the list of (p, q') with q == phi(p) + q'."""
    tgt = phi.target
    out = {}
    for qp, _ in Q_elems:
        for p, pw in P_elems:
            k = tgt.key(tgt.add(phi.apply(p, pw), qp))
            out.setdefault(k, []).append(((p, pw), qp))
    return out


def check_integral_morphism(phi: MonoidHom, deg_bound: int, flat: bool = False) -> Verdict:
    src, tgt = phi.source, phi.target
    P_elems = src.elements_up_to(deg_bound)
    Q_elems = tgt.elements_up_to(deg_bound)
    phis = [(p, pw, phi.apply(p, pw)) for p, pw in P_elems]
    decomp = _decompositions(phi, P_elems, Q_elems)

    # bucket phi(p) + q by value to find all squares p1,q1,p2,q2
    buckets = {}
    for p, pw, fp in phis:
        for q, _ in Q_elems:
            buckets.setdefault(tgt.key(tgt.add(fp, q)), []).append((p, pw, q))
    for entries in buckets.values():
        for i, (p1, w1, q1) in enumerate(entries):
            d1 = decomp.get(tgt.key(q1), [])
            for p2, w2, q2 in entries[i:]:
                if _fill_square(src, tgt, p1, p2, q1, q2, d1, decomp.get(tgt.key(q2), [])):
                    continue
                return failed(
                    "UNFILLABLE-SQUARE",
                    witness={"p1": p1, "q1": q1, "p2": p2, "q2": q2},
                    bound=deg_bound,
                    detail="no completion found within the bound",
                )
    if flat:
        for p1, w1, f1 in phis:
            for p2, w2, f2 in phis:
                if src.equal(p1, p2):
                    continue
                for q, _ in Q_elems:
                    if not tgt.equal(tgt.add(f1, q), tgt.add(f2, q)):
                        continue
                    ok = any(
                        src.equal(src.add(p1, pp), src.add(p2, pp))
                        for (pp, _), _ in decomp.get(tgt.key(q), [])
                    )
                    if not ok:
                        return failed("FLATNESS-FAILS", witness={"q": q, "p1": p1, "p2": p2}, bound=deg_bound)
        return passed("FLAT", bound=deg_bound)
    return passed("INTEGRAL", bound=deg_bound)


def _fill_square(src, tgt, p1, p2, q1, q2, d1, d2) -> bool:
    by_q = {}
    for (pp2, _), qp in d2:
        by_q.setdefault(tgt.key(qp), []).append(pp2)
    for (pp1, _), qp in d1:
        for pp2 in by_q.get(tgt.key(qp), ()):
            if src.equal(src.add(p1, pp1), src.add(p2, pp2)):
                return True
    return False


def check_flat_morphism(phi: MonoidHom, deg_bound: int) -> Verdict:
    return check_integral_morphism(phi, deg_bound, flat=True)


def minimal_fiber(phi: MonoidHom, quotient: Callable, lam, bound: int, value: Callable | None = None) -> Verdict:
    """The unique minimal element of ``m^-1(lam)`` for a flat Kummer ``P -> Q``.

    Fiber elements of degree (and value) <= bound are compared under
    ``q <= q'`` iff ``q' = q + phi(p)``; the result also checks that every
    enumerated fiber element lies in ``iota(lam) + phi(P)``.
    """
    tgt = phi.target
    fiber = [q for q, _ in tgt.elements_up_to(bound) if quotient(q) == lam and (value is None or value(q) <= bound)]
    if not fiber:
        return failed("EMPTY-FIBER", bound=bound, witness=lam)
    pimgs = [phi.apply(p, w) for p, w in phi.source.elements_up_to(bound)]
    nonzero = [f for f in pimgs if not tgt.equal(f, tgt.zero())]
    keys = {tgt.key(q): q for q in fiber}
    above = set()
    for q in fiber:
        for f in nonzero:
            k = tgt.key(tgt.add(q, f))
            if k in keys:
                above.add(k)
    minima = [q for q in fiber if tgt.key(q) not in above]
    if len(minima) != 1:
        return failed("NON-UNIQUE-MINIMUM", witness=minima, bound=bound)
    iota = minima[0]
    reach = {tgt.key(tgt.add(iota, f)) for f in pimgs}
    stray = [q for q in fiber if tgt.key(q) not in reach]
    if stray:
        return failed("NOT-FREE", witness=stray[0], bound=bound,
                      detail=f"{tgt.format(stray[0])} is not iota + P within the bound")
    return passed("MINIMUM", bound=bound, witness=iota)
