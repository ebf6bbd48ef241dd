"""Group algebras ``E0[A]`` over a finite algebra, their Hopf structure and ideals."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from coverforge.group import AbelianGroup
from coverforge.hopf.algebra import FiniteAlgebra, FiniteAlgebraRing
from coverforge.hopf.linalg import RowSpace, as_vec
from coverforge.verdict import failed, inconclusive, passed


class SearchCapExceeded(ValueError):
    pass


class GroupAlgebraStructure:
    """``E = E0[A]`` with ``E0``-linear coproduct, counit and antipode.

    An element of ``E`` is a flat vector of length ``|A| * dim E0``; its
    component at ``lam`` (an ``E0`` vector) is ``x.reshape(|A|, d0)[index(lam)]``.
    Tensors ``E (x)_{E0} E`` are flat vectors of shape ``(|A|, |A|, d0)``.
    """

    def __init__(self, base: FiniteAlgebra, A: AbelianGroup):
        self.base = base
        self.A = A
        self.p = base.p
        self.n = A.order
        self.d0 = base.dim
        self.dim = self.n * self.d0
        self.tensor_dim = self.n * self.n * self.d0
        els = A.elements
        self._add_table = np.array([[A.index(A.add(a, b)) for b in els] for a in els])
        self._neg = np.array([A.index(A.neg(a)) for a in els])
        self._L = [base.left_matrix(base.basis(i)) for i in range(self.d0)]

    def __repr__(self):
        return f"{self.base!r}[{self.A}]"

    # -- elements -----------------------------------------------------------
    def _comp(self, x) -> np.ndarray:
        return as_vec(x, self.p).reshape(self.n, self.d0)

    def element(self, terms) -> np.ndarray:
        """``terms`` maps group elements to base elements (vectors, labels or ints)."""
        out = np.zeros((self.n, self.d0), dtype=np.int64)
        for lam, b in terms.items():
            out[self.A.index(lam)] += self.base.vec(b)
        return out.reshape(-1) % self.p

    def group_element(self, lam) -> np.ndarray:
        return self.element({lam: 1})

    def one(self) -> np.ndarray:
        return self.group_element(self.A.zero)

    def zero(self) -> np.ndarray:
        return np.zeros(self.dim, dtype=np.int64)

    def scalar(self, b, x) -> np.ndarray:
        """``b * x`` for ``b`` in ``E0``."""
        M = self.base.left_matrix(self.base.vec(b))
        return (self._comp(x) @ M % self.p).reshape(-1)

    def mul(self, x, y) -> np.ndarray:
        X, Y = self._comp(x), self._comp(y)
        out = np.zeros((self.n, self.d0), dtype=np.int64)
        for i in np.flatnonzero(X.any(axis=1)):
            for j in np.flatnonzero(Y.any(axis=1)):
                out[self._add_table[i, j]] += self.base.mul(X[i], Y[j])
        return out.reshape(-1) % self.p

    def shift(self, x, lam) -> np.ndarray:
        X = self._comp(x)
        out = np.zeros_like(X)
        k = self.A.index(lam)
        out[self._add_table[k]] = X
        return out.reshape(-1)

    def generator_products(self, x) -> list:
        """Products of ``x`` with a generating set of ``E`` as an ``F_p``-algebra."""
        X = self._comp(x)
        out = [(X @ L % self.p).reshape(-1) for L in self._L[1:]]
        out.extend(self.shift(x, g) for g in self.A.gens())
        return out

    def format(self, x) -> str:
        X = self._comp(x)
        terms = []
        for lam, row in zip(self.A.elements, X):
            if not row.any():
                continue
            b = self.base.format(row)
            g = "[" + self.A.format(lam) + "]"
            terms.append(g if b == "1" else f"({b}){g}")
        return " + ".join(terms) if terms else "0"

    # -- Hopf structure -----------------------------------------------------
    def counit(self, x) -> np.ndarray:
        return self._comp(x).sum(axis=0) % self.p

    def antipode(self, x) -> np.ndarray:
        X = self._comp(x)
        out = np.zeros_like(X)
        out[self._neg] = X
        return out.reshape(-1)

    def coproduct(self, x) -> np.ndarray:
        X = self._comp(x)
        out = np.zeros((self.n, self.n, self.d0), dtype=np.int64)
        idx = np.arange(self.n)
        out[idx, idx] = X
        return out.reshape(-1)

    def tensor(self, x, y) -> np.ndarray:
        X, Y = self._comp(x), self._comp(y)
        out = np.zeros((self.n, self.n, self.d0), dtype=np.int64)
        for i in np.flatnonzero(X.any(axis=1)):
            for j in np.flatnonzero(Y.any(axis=1)):
                out[i, j] = self.base.mul(X[i], Y[j])
        return out.reshape(-1)

    def tensor_ideal(self, I: IdealSubspace) -> RowSpace:
        """``I (x) E + E (x) I`` inside ``E (x)_{E0} E``.

        Spanned over ``F_p`` by ``x (x) [mu]`` and ``[mu] (x) x`` for ``x`` in a
        basis of ``I``, since ``I`` absorbs the ``E0`` scalars.
        """
        J = RowSpace(self.p, self.tensor_dim)
        for x in I.basis():
            X = self._comp(x)
            for m in range(self.n):
                t = np.zeros((self.n, self.n, self.d0), dtype=np.int64)
                t[:, m] = X
                J.add(t.reshape(-1))
                t = np.zeros((self.n, self.n, self.d0), dtype=np.int64)
                t[m, :] = X
                J.add(t.reshape(-1))
        return J

    def check_structure(self) -> str | None:
        """Algebra-map identities for counit, antipode and coproduct on basis pairs."""
        basis = [np.eye(self.dim, dtype=np.int64)[k] for k in range(self.dim)]
        for x, y in itertools.combinations_with_replacement(basis, 2):
            xy = self.mul(x, y)
            if not np.array_equal(self.counit(xy), self.base.mul(self.counit(x), self.counit(y))):
                return "counit"
            if not np.array_equal(self.antipode(xy), self.mul(self.antipode(x), self.antipode(y))):
                return "antipode"
            if not np.array_equal(self.coproduct(xy), self._tensor_mul(self.coproduct(x), self.coproduct(y))):
                return "coproduct"
        return None

    def _tensor_mul(self, s, t) -> np.ndarray:
        S = as_vec(s, self.p).reshape(self.n, self.n, self.d0)
        T = as_vec(t, self.p).reshape(self.n, self.n, self.d0)
        out = np.zeros_like(S)
        for i, j in zip(*np.nonzero(S.any(axis=2))):
            for k, l in zip(*np.nonzero(T.any(axis=2))):
                out[self._add_table[i, k], self._add_table[j, l]] += self.base.mul(S[i, j], T[k, l])
        return out.reshape(-1) % self.p


class IdealSubspace:
    """An ideal of a group algebra, stored as an echelon row space."""

    def __init__(self, ambient: GroupAlgebraStructure, space: RowSpace, generators=()):
        self.ambient = ambient
        self.space = space
        self.generators = [as_vec(g, ambient.p) for g in generators]

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def codim(self) -> int:
        return self.ambient.dim - self.space.dim

    def basis(self) -> np.ndarray:
        return self.space.basis()

    def contains(self, x) -> bool:
        return self.space.contains(x)

    def reduce(self, x) -> np.ndarray:
        return self.space.reduce(x)

    def is_closed(self) -> bool:
        return all(self.contains(y) for x in self.basis() for y in self.ambient.generator_products(x))

    def __repr__(self):
        return f"IdealSubspace(dim {self.dim} in {self.ambient!r})"


def ideal_closure(E: GroupAlgebraStructure, gens) -> IdealSubspace:
    """Smallest ideal containing ``gens``, by a worklist over generator products."""
    gens = [as_vec(g, E.p) for g in gens]
    W = RowSpace(E.p, E.dim)
    queue = list(gens)
    while queue:
        new = W.add_reduced_nonzero(queue.pop())
        if new is not None:
            queue.extend(E.generator_products(new))
    return IdealSubspace(E, W, gens)


@dataclass(frozen=True)
class HopfViolation:
    axiom: str
    vector: str

    def __str__(self):
        return f"{self.axiom} fails on {self.vector}"


def is_hopf_ideal(S: GroupAlgebraStructure, I: IdealSubspace) -> HopfViolation | None:
    """None when ``eps(I) = 0``, ``sigma(I) <= I`` and ``Delta(I) <= I(x)E + E(x)I``."""
    basis = I.basis()
    for x in basis:
        if S.counit(x).any():
            return HopfViolation("counit", S.format(x))
    for x in basis:
        if not I.contains(S.antipode(x)):
            return HopfViolation("antipode", S.format(x))
    J = S.tensor_ideal(I)
    gens = I.generators or list(basis)
    for x in gens:
        if not J.contains(S.coproduct(x)):
            return HopfViolation("coproduct", S.format(x))
    return None


def is_grouplike_mod(S: GroupAlgebraStructure, I: IdealSubspace, g, J: RowSpace | None = None) -> bool:
    g = as_vec(g, S.p)
    if not np.array_equal(S.counit(g), S.base.one()):
        return False
    if J is None:
        J = S.tensor_ideal(I)
    return J.contains(S.coproduct(g) - S.tensor(g, g))


def grouplike_search(S: GroupAlgebraStructure, I: IdealSubspace, directions, cap: int = 24, start=None) -> list:
    """All group-like ``start + sum c_i d_i`` (``start`` defaults to 1), one per class mod ``I``.

    Results are canonical representatives (reduced modulo ``I``), in the order
    they are first met.  Nothing is claimed outside the searched affine subspace.
    """
    directions = [as_vec(d, S.p) for d in directions]
    if len(directions) > cap:
        raise SearchCapExceeded(f"{len(directions)} directions exceed the cap {cap}")
    base = S.one() if start is None else as_vec(start, S.p)
    J = S.tensor_ideal(I)
    found, seen = [], set()
    D = np.array(directions).reshape(len(directions), S.dim)
    for coeffs in itertools.product(range(S.p), repeat=len(directions)):
        g = (base + np.asarray(coeffs, dtype=np.int64) @ D) % S.p
        rep = I.reduce(g)
        key = rep.tobytes()
        if key in seen:
            continue
        if is_grouplike_mod(S, I, g, J):
            seen.add(key)
            found.append(rep)
    return found


def base_directions(S: GroupAlgebraStructure, m_gens) -> list:
    """An ``F_p``-basis of ``m E`` for the ideal of ``E0`` generated by ``m_gens``."""
    E0 = S.base
    W = RowSpace(E0.p, E0.dim)
    queue = [E0.vec(m) for m in m_gens]
    while queue:
        new = W.add_reduced_nonzero(queue.pop())
        if new is not None:
            queue.extend(E0.basis_products(new))
    return [S.element({lam: b}) for b in W.basis() for lam in S.A]


def grouplike_residue_compare(S: GroupAlgebraStructure, I: IdealSubspace, m_gens, cap: int = 24):
    """Compare group-likes of the residue fiber with their lifts near each group element.

    For each class of group elements modulo ``mE + I`` the affine subspace
    ``lam + mE`` is searched; the comparison holds when every class has exactly
    one group-like lift modulo ``I``.
    """
    if S.n % S.p == 0:
        return inconclusive("REFUSED", detail=f"|A| = {S.n} is not invertible in characteristic {S.p}")
    dirs = base_directions(S, m_gens)
    fiber = RowSpace(S.p, S.dim, list(I.basis()) + dirs)
    classes = {}
    for lam in S.A:
        key = fiber.reduce(S.group_element(lam)).tobytes()
        classes.setdefault(key, lam)
    lifts = {}
    for lam in classes.values():
        lifts[lam] = grouplike_search(S, I, dirs, cap=cap, start=S.group_element(lam))
    fmt = {S.A.format(lam): [S.format(g) for g in gs] for lam, gs in lifts.items()}
    data = dict(residue_classes=len(classes), directions=len(dirs), lifts=fmt)
    bad = [lam for lam, gs in lifts.items() if len(gs) != 1]
    if bad:
        return failed("NOT-BIJECTIVE", witness=S.A.format(bad[0]), **data)
    return passed("BIJECTION", detail=f"{len(classes)} residue group-likes, each with a unique lift", **data)


def cover_algebra(d) -> FiniteAlgebra:
    """Flatten the cover algebra of a building datum over a finite algebra.

    Basis ``e_i v_lam`` is ordered with ``lam`` major; labels append ``x<lam>``
    to the base label.
    """
    R = d.R
    if not isinstance(R, FiniteAlgebraRing):
        raise TypeError("the building datum must live over a finite algebra")
    E0, A = R.algebra, d.A
    d0, n = E0.dim, A.order
    els = A.elements
    T = np.zeros((n * d0,) * 3, dtype=np.int64)
    for a, b in itertools.product(els, repeat=2):
        s = R.vector(d.s(a, b))
        c = A.index(A.add(a, b))
        ia, ib = A.index(a), A.index(b)
        # (e_i v_a)(e_j v_b) = e_i e_j s v_{a+b}
        prod = np.einsum("ijk,kl->ijl", E0.T, E0.left_matrix(s)) % E0.p
        T[ia * d0:(ia + 1) * d0, ib * d0:(ib + 1) * d0, c * d0:(c + 1) * d0] = prod
    labels = []
    for a in els:
        tag = "" if a == A.zero else "x" + "".join(str(t) for t in a)
        for l in E0.labels:
            labels.append(l if not tag else (tag if l == "1" else l + tag))
    return FiniteAlgebra(E0.p, labels, T)


def stabilizer_ideal(d) -> tuple[GroupAlgebraStructure, IdealSubspace]:
    """The ideal generated by ``v_lam ([lam] - [0])`` inside ``O_X[A]``."""
    OX = cover_algebra(d)
    S = GroupAlgebraStructure(OX, d.A)
    d0 = d.R.algebra.dim
    gens = []
    for lam in d.A.nonzero():
        v = OX.basis(d.A.index(lam) * d0)
        gens.append(S.element({lam: v, d.A.zero: -v}))
    return S, ideal_closure(S, gens)
