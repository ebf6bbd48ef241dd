"""The universal monoids P_A and Q_A of a finite abelian group A.

``P_A`` is ``N^(A x A)`` modulo the cocycle relations, ``Q_A`` is the free
extension of ``A`` by ``P_A`` along the tautological cocycle ``e``.  ``Q_A`` is
kept as pairs ``(p, lam)``; the presentation through ``(P_A + Q_A^+)/R_P`` is
built separately for cross-checks.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache

from coverforge.cocycle import Cocycle, CocycleError, MonoidTarget, Naturals, NaturalVectors, RingMultiplicative, Target, validate
from coverforge.fpmonoid import (
    AffineMonoid,
    FGMonoid,
    GradingCert,
    MonoidHom,
    MonoidPresentation,
    affine_membership,
    minimal_fiber,
)
from coverforge.fpmonoid.completion import vec_add
from coverforge.group import AbelianGroup
from coverforge.verdict import Verdict, failed, passed

MAX_GENERATORS = 64


class UniversalError(ValueError):
    pass


@dataclass(frozen=True)
class QAElem:
    p: tuple
    lam: tuple


class Universal:
    """All universal objects attached to one group ``A``.

    Generators ``e_{a,b}`` of ``N^(A x A)`` are numbered ``index(a)*|A| + index(b)``
    (lexicographic order of ``A x A``).  Vectors in ``Z^A/<e_0>`` and in
    ``Q_A^+`` use one coordinate per nonzero element, in the order of ``A``.
    """

    def __init__(self, A: AbelianGroup):
        self.A = A
        self.n = A.order
        els = A.elements
        self.pairs = [(a, b) for a in els for b in els]
        names = [f"e_{{{A.format(a)},{A.format(b)}}}" for a, b in self.pairs]
        rels = []
        z = A.zero
        for a in els:
            for b in els:
                rels.append((self.e(a, b), self.e(b, a)))
        for a in els:
            rels.append((self.e(z, a), self._zero_vec()))
        for a in els:
            for b in els:
                ab = A.add(a, b)
                for c in els:
                    bc = A.add(b, c)
                    rels.append((vec_add(self.e(a, b), self.e(ab, c)), vec_add(self.e(b, c), self.e(bc, a))))
        self.P = MonoidPresentation(len(self.pairs), rels, names)

    # -- P_A ------------------------------------------------------------------
    def _zero_vec(self):
        return (0,) * (self.n * self.n)

    def e(self, a, b) -> tuple:
        """The generator ``e_{a,b}`` as a vector."""
        v = [0] * (self.n * self.n)
        v[self.A.index(a) * self.n + self.A.index(b)] = 1
        return tuple(v)

    def pa_zero(self) -> tuple:
        return self._zero_vec()

    def pa_nf(self, p) -> tuple:
        return self.P.normal_form(p)

    def pa_add(self, p, q) -> tuple:
        return self.P.add(p, q)

    def pa_format(self, p) -> str:
        return self.P.format(self.P.normal_form(p))

    @cached_property
    def generator_classes(self) -> list:
        """Distinct nonzero normal forms of the generators, in generator order."""
        out = []
        for i in range(self.P.rank):
            nf = self.P.normal_form(self.P.gen(i))
            if any(nf) and nf not in out:
                out.append(nf)
        return out

    @cached_property
    def PA(self) -> FGMonoid:
        return FGMonoid(self.pa_zero(), self.pa_add, self.pa_nf, self.generator_classes, "P_A", self.P.format)

    # -- Z^A/<e_0> --------------------------------------------------------------
    def unit_vector(self, lam) -> tuple:
        """``e_lam`` in ``Z^A/<e_0>`` (zero for ``lam = 0``)."""
        v = [0] * (self.n - 1)
        i = self.A.index(lam)
        if i:
            v[i - 1] = 1
        return tuple(v)

    def sigma(self, x) -> tuple:
        """``Sigma(e_{a,b}) = e_a + e_b`` followed by the e_0-quotient."""
        out = [0] * (self.n - 1)
        for k, c in enumerate(x):
            if c:
                a, b = self.pairs[k]
                for t in (a, b):
                    i = self.A.index(t)
                    if i:
                        out[i - 1] += c
        return tuple(out)

    def pi(self, x) -> tuple:
        """``Pi(e_{a,b}) = e_{a+b}`` followed by the e_0-quotient."""
        out = [0] * (self.n - 1)
        for k, c in enumerate(x):
            if c:
                a, b = self.pairs[k]
                i = self.A.index(self.A.add(a, b))
                if i:
                    out[i - 1] += c
        return tuple(out)

    def phi(self, x) -> tuple:
        """``phi_A(e_{a,b}) = e_a + e_b - e_{a+b}``, extended linearly."""
        return tuple(s - t for s, t in zip(self.sigma(x), self.pi(x)))

    @cached_property
    def generator_weights(self) -> tuple:
        """``|phi_A(e_{a,b})|`` for every generator: 0, 1 or 2."""
        return tuple(sum(self.phi(self.P.gen(i))) for i in range(self.P.rank))

    def check_phi_on_relations(self) -> bool:
        return all(self.phi(u) == self.phi(v) for u, v in self.P.relations)

    def m_vec(self, v) -> tuple:
        """``m: Z^A/<e_0> -> A``, ``e_lam -> lam``."""
        out = self.A.zero
        for i, c in enumerate(v):
            out = self.A.add(out, self.A.mul(c, self.A.elements[i + 1]))
        return out

    # -- Q_A --------------------------------------------------------------------
    def qa(self, p=None, lam=None) -> QAElem:
        p = self.pa_zero() if p is None else self.pa_nf(p)
        lam = self.A.zero if lam is None else self.A.elem(lam)
        return QAElem(p, lam)

    def qa_add(self, x: QAElem, y: QAElem) -> QAElem:
        """``(p, a) + (p', b) = (p + p' + e_{a,b}, a + b)``."""
        p = self.P.normal_form(vec_add(vec_add(x.p, y.p), self.e(x.lam, y.lam)))
        return QAElem(p, self.A.add(x.lam, y.lam))

    def qa_multiple(self, k: int, x: QAElem) -> QAElem:
        acc = self.qa()
        for _ in range(k):
            acc = self.qa_add(acc, x)
        return acc

    def kummer_multiple(self, x: QAElem) -> QAElem:
        """``ord(lam)(p, lam) = (ord(lam) p + sum_{k<ord} e_{k lam, lam}, 0)``."""
        A = self.A
        n = A.order_of(x.lam)
        p = tuple(n * c for c in x.p)
        for k in range(1, n):
            p = vec_add(p, self.e(A.mul(k, x.lam), x.lam))
        return QAElem(self.P.normal_form(p), A.zero)

    def qa_format(self, x: QAElem) -> str:
        return f"({self.P.format(x.p)}, {self.A.format(x.lam)})"

    def gamma(self, p) -> QAElem:
        return QAElem(self.pa_nf(p), self.A.zero)

    def iota(self, lam) -> QAElem:
        return QAElem(self.pa_zero(), self.A.elem(lam))

    @staticmethod
    def m(x: QAElem) -> tuple:
        return x.lam

    @cached_property
    def QA(self) -> FGMonoid:
        gens = [QAElem(g, self.A.zero) for g in self.generator_classes]
        gens += [self.iota(lam) for lam in self.A.nonzero()]
        return FGMonoid(self.qa(), self.qa_add, lambda x: (x.p, x.lam), gens, "Q_A", self.qa_format)

    def gamma_hom(self) -> MonoidHom:
        return MonoidHom(self.PA, self.QA, func=self.gamma)

    def value(self, x) -> int:
        """``|phi_A(p) + e_lam|``; accepts a ``QAElem`` or a ``P_A`` vector."""
        if isinstance(x, QAElem):
            return sum(self.phi(x.p)) + (1 if x.lam != self.A.zero else 0)
        return sum(self.phi(x))

    def to_int(self, x: QAElem) -> tuple:
        """``Q_A -> Z^A/<e_0>``, ``(p, lam) -> phi_A(p) + e_lam``."""
        return tuple(a + b for a, b in zip(self.phi(x.p), self.unit_vector(x.lam)))

    # -- Q_A^+, h, j, tau, eta ---------------------------------------------------
    def qplus(self, *lams) -> tuple:
        """``e_{lam_1} + ... + e_{lam_k}`` in ``Q_A^+ = N^A/<e_0>``."""
        v = [0] * (self.n - 1)
        for lam in lams:
            i = self.A.index(lam)
            if i:
                v[i - 1] += 1
        return tuple(v)

    def _multiset(self, q):
        out = []
        for i, c in enumerate(q):
            if c < 0:
                raise UniversalError("Q_A^+ vectors are nonnegative")
            out.extend([self.A.elements[i + 1]] * c)
        return out

    def m_plus(self, q) -> tuple:
        return self.m_vec(q)

    def h(self, q) -> tuple:
        """``e_{l1,l2} + e_{l1+l2,l3} + ...`` over the indices of ``q`` in group order."""
        lams = self._multiset(q)
        acc = self.pa_zero()
        if len(lams) <= 1:
            return acc
        run = lams[0]
        for lam in lams[1:]:
            acc = vec_add(acc, self.e(run, lam))
            run = self.A.add(run, lam)
        return self.P.normal_form(acc)

    def j(self, q) -> QAElem:
        return QAElem(self.h(q), self.m_plus(q))

    def tau(self, p, q) -> QAElem:
        """``(p, q) -> (p + h(q), m(q))``."""
        return QAElem(self.P.normal_form(vec_add(p, self.h(q))), self.m_plus(q))

    def eta(self, x: QAElem):
        """``(p, lam) -> (p, e_lam)``; a section of ``tau``."""
        return x.p, self.unit_vector(x.lam)

    @cached_property
    def RP(self) -> MonoidPresentation:
        """``(P_A + Q_A^+)/R_P``: the ``R_A`` relations plus
        ``e_{a,b} + f_{a+b} ~ f_a + f_b`` (with ``f_0 = 0``)."""
        N, k = self.P.rank, self.n - 1

        def pad(p, q=None):
            return tuple(p) + (tuple(q) if q is not None else (0,) * k)

        rels = [(pad(u), pad(v)) for u, v in self.P.relations]
        for a in self.A:
            for b in self.A:
                rels.append((pad(self.e(a, b), self.qplus(self.A.add(a, b))), pad(self.pa_zero(), self.qplus(a, b))))
        names = list(self.P.names) + [f"f_{self.A.format(lam)}" for lam in self.A.nonzero()]
        return MonoidPresentation(N + k, rels, names)

    def rp_vector(self, p, q) -> tuple:
        return tuple(p) + tuple(q)

    def rp_split(self, v):
        N = self.P.rank
        return tuple(v[:N]), tuple(v[N:])

    # -- gradings -------------------------------------------------------------
    def pa_grading(self) -> GradingCert:
        w = self.generator_weights
        return GradingCert(w, frozenset(i for i, x in enumerate(w) if x >= 1))

    def rp_grading(self) -> GradingCert:
        w = self.generator_weights + (1,) * (self.n - 1)
        return GradingCert(w, frozenset(i for i, x in enumerate(w) if x >= 1))

    # -- integral monoids --------------------------------------------------------
    @cached_property
    def P_int(self) -> AffineMonoid:
        return AffineMonoid([self.phi(self.P.gen(i)) for i in range(self.P.rank)], self.n - 1)

    @cached_property
    def Q_int(self) -> AffineMonoid:
        gens = list(self.P_int.generators) + [self.unit_vector(lam) for lam in self.A.nonzero()]
        return AffineMonoid(gens, self.n - 1)

    def value_functional(self) -> tuple:
        return (1,) * (self.n - 1)

    def int_generators(self):
        """Minimal generators of ``P_A^int`` and ``Q_A^int`` (sorted)."""
        w = self.value_functional()
        return self.P_int.minimal_generators(w), self.Q_int.minimal_generators(w)

    def int_inclusion(self) -> MonoidHom:
        P, Q = _affine_fg(self.P_int, "P_A^int"), _affine_fg(self.Q_int, "Q_A^int")
        return MonoidHom(P, Q, func=lambda x: x)


def _affine_fg(M: AffineMonoid, name: str) -> FGMonoid:
    gens = M.minimal_generators()
    return FGMonoid(M.zero(), M.add, tuple, gens, name)


@lru_cache(maxsize=None)
def _universal(A: AbelianGroup) -> Universal:
    return Universal(A)


def universal(A: AbelianGroup, max_generators: int = MAX_GENERATORS) -> Universal:
    """The (cached) universal objects of ``A``; refuses ``|A|^2 > max_generators``."""
    if A.order ** 2 > max_generators:
        raise UniversalError(f"|A|^2 = {A.order ** 2} exceeds the generator cap {max_generators}")
    return _universal(A)


def build_PA(A: AbelianGroup, max_generators: int = MAX_GENERATORS) -> MonoidPresentation:
    U = universal(A, max_generators)
    U.P.complete()
    return U.P


def universal_cocycle(U: Universal) -> Cocycle:
    """``e: A x A -> P_A``, ``(a, b) -> e_{a,b}``."""
    return Cocycle.from_function(U.A, MonoidTarget(U.PA), lambda a, b: U.pa_nf(U.e(a, b)))


# -- universal property ----------------------------------------------------------
def target_monoid(t: Target) -> FGMonoid:
    if isinstance(t, MonoidTarget):
        return t.M
    if isinstance(t, Naturals):
        return FGMonoid(0, lambda a, b: a + b, lambda a: a, [1], "N")
    if isinstance(t, NaturalVectors):
        gens = [tuple(1 if i == j else 0 for j in range(t.k)) for i in range(t.k)]
        return FGMonoid(t.identity(), t.op, tuple, gens, f"N^{t.k}")
    if isinstance(t, RingMultiplicative):
        return FGMonoid(t.identity(), t.op, lambda a: a, [], "(R,*)", str)
    return FGMonoid(t.identity(), t.op, lambda a: a, [], "M", t.format)


def universal_factor(f: Cocycle, U: Universal | None = None) -> MonoidHom:
    """The homomorphism ``P_A -> P`` with ``e_{a,b} -> f(a, b)``.

    The relations of ``P_A`` are re-checked; a failure there would mean the
    cocycle validator and the presentation disagree.
    """
    v = validate(f)
    if v is not None:
        raise CocycleError(f"not a 2-cocycle: {v}")
    U = U or universal(f.A)
    tgt = target_monoid(f.target)
    images = [f(a, b) for a, b in U.pairs]
    src = FGMonoid(U.pa_zero(), U.pa_add, U.pa_nf, [U.P.gen(i) for i in range(U.P.rank)], "P_A", U.P.format)
    hom = MonoidHom(src, tgt, images, relations=U.P.relations)
    hom.images_by_pair = dict(zip(U.pairs, images))
    return hom


def hom_on(hom: MonoidHom, p) -> object:
    """Evaluate a generator-image homomorphism out of ``P_A`` on a vector."""
    return hom.apply(p, p)


@dataclass
class UniversalMorphisms:
    iota: dict
    cocycle: Cocycle
    pa_hom: MonoidHom
    verdicts: dict

    def qa_image(self, U: Universal, x: QAElem):
        tgt = self.pa_hom.target
        return tgt.add(hom_on(self.pa_hom, x.p), self.iota[x.lam])


def universal_morphisms(
    phi: MonoidHom, A: AbelianGroup, quotient, bound: int, value=None, Q_target: FGMonoid | None = None
) -> UniversalMorphisms:
    """The canonical maps ``P_A -> P`` and ``Q_A -> Q`` of a flat Kummer pair.

    ``phi: P -> Q`` must be a function-style homomorphism and ``quotient`` the
    map ``Q -> A``.  The minimal fiber elements give ``iota``; the cocycle
    ``iota(a) + iota(b) - iota(a+b)`` is decomposed into ``P`` by search.
    The ``P_A -> P`` map lands in ``P``; ``Q_A -> Q`` is ``(p, a) -> phi(image p) + iota(a)``.
    """
    Q = phi.target
    iota, verdicts = {}, {}
    for lam in A:
        v: Verdict = minimal_fiber(phi, quotient, lam, bound, value)
        verdicts[lam] = v
        if not v.ok:
            raise UniversalError(f"{v.kind} over {A.format(lam)}: {v.detail or v.witness}")
        iota[lam] = v.witness
    P = phi.source
    p_elems = P.elements_up_to(bound)
    images = {}
    for p, w in p_elems:
        images.setdefault(Q.key(phi.apply(p, w)), p)
    table = {}
    for a in A:
        for b in A:
            if A.index(a) > A.index(b):
                continue
            target = Q.key(Q.add(iota[a], iota[b]))
            hit = None
            for p, w in p_elems:
                if Q.key(Q.add(phi.apply(p, w), iota[A.add(a, b)])) == target:
                    hit = p
                    break
            if hit is None:
                raise UniversalError(f"NOT-FREE: iota({A.format(a)}) + iota({A.format(b)}) is not in iota + P")
            table[(a, b)] = hit
    f = Cocycle(A, MonoidTarget(P), table)
    U = universal(A)
    pa_hom = universal_factor(f, U)
    # commuting square: Q_A -> Q sends iota(a) + iota(b) = (e_{a,b}, a+b) to iota(a) + iota(b)
    for k, (a, b) in enumerate(U.pairs):
        lhs = Q.add(phi.apply(pa_hom.images[k], None), iota[A.add(a, b)])
        if not Q.equal(lhs, Q.add(iota[a], iota[b])):
            raise UniversalError("the square P_A -> Q_A -> Q does not commute")
    for lam in A:
        if quotient(iota[lam]) != lam:
            raise UniversalError("iota is not a section of the quotient map")
    return UniversalMorphisms(iota, f, pa_hom, verdicts)


def qa_to_q(phi: MonoidHom, mor: UniversalMorphisms, x: QAElem):
    """``(p, lam) -> phi(image of p) + iota(lam)``."""
    Q = phi.target
    return Q.add(phi.apply(hom_on(mor.pa_hom, x.p), None), mor.iota[x.lam])


def pa_int_contains_both_ways(U: Universal, expected) -> bool:
    """Check ``<phi_A(generators)> == <expected>`` by membership in each direction."""
    E = AffineMonoid(expected, U.n - 1)
    w = U.value_functional()
    return all(affine_membership(E, g, w) is not None for g in U.P_int.generators) and all(
        affine_membership(U.P_int, g, w) is not None for g in expected
    )


# -- cocycles into N versus homomorphisms P_A -> N ----------------------------------
def natural_cocycles(A: AbelianGroup, max_entry: int) -> list:
    """All N-valued cocycles on ``A`` with entries ``<= max_entry`` (brute force)."""
    keys = [k for k in Cocycle._pairs(A) if A.zero not in k]
    out = []
    for vals in itertools.product(range(max_entry + 1), repeat=len(keys)):
        f = Cocycle.from_nonzero(A, Naturals(), dict(zip(keys, vals)))
        if validate(f) is None:
            out.append(f)
    return out


def pa_homs_to_naturals(U: Universal, max_image: int) -> list:
    """Homomorphisms ``P_A -> N`` as generator-image vectors, images ``<= max_image``.

    Values are assigned to the generator classes and every defining relation
    of ``P_A`` is checked on the resulting linear functional.
    """
    classes = U.generator_classes
    cls_of = []
    for i in range(U.P.rank):
        nf = U.P.normal_form(U.P.gen(i))
        cls_of.append(classes.index(nf) if any(nf) else None)
    out = []
    for vals in itertools.product(range(max_image + 1), repeat=len(classes)):
        w = tuple(0 if c is None else vals[c] for c in cls_of)
        if all(sum(a * x for a, x in zip(w, u)) == sum(a * x for a, x in zip(w, v)) for u, v in U.P.relations):
            out.append(w)
    return out


def hom_vector(U: Universal, f: Cocycle) -> tuple:
    """The factorization of ``f`` through ``P_A``, as generator images."""
    h = universal_factor(f, U)
    return tuple(h.images_by_pair[pair] for pair in U.pairs)


def cocycle_of_hom(U: Universal, w) -> Cocycle:
    """``(a, b) -> h(e_{a,b})``."""
    return Cocycle.from_function(U.A, Naturals(), lambda a, b: w[U.pairs.index((a, b))])


def cocycle_hom_bijection(A: AbelianGroup, bound: int) -> Verdict:
    """Cocycles with entries ``<= bound`` against homomorphisms with images ``<= bound``."""
    U = universal(A)
    cocycles = natural_cocycles(A, bound)
    homs = pa_homs_to_naturals(U, bound)
    images = [hom_vector(U, f) for f in cocycles]
    if len(set(images)) != len(images):
        return failed("NOT-INJECTIVE", bound=bound)
    if set(images) != set(homs):
        extra = sorted(set(homs) - set(images)) or sorted(set(images) - set(homs))
        return failed("NOT-SURJECTIVE", witness=extra[0], bound=bound)
    for f, w in zip(cocycles, images):
        if cocycle_of_hom(U, w) != f:
            return failed("ROUND-TRIP", witness=f.to_json(), bound=bound)
    return passed("BIJECTION", bound=bound, detail=f"{len(cocycles)} cocycles on {A}", count=len(cocycles))
