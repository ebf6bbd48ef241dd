"""Finite-dimensional commutative algebras over prime fields."""

from __future__ import annotations

import itertools
import json
import re

import numpy as np

from coverforge.hopf.linalg import RowSpace, as_vec, solve_mod_p
from coverforge.ring.base import NotInvertibleError, PrimeField, Ring


class AlgebraError(ValueError):
    pass


class FiniteAlgebra:
    """Basis ``e_0..e_{d-1}`` over ``F_p`` with ``e_i e_j = sum_k T[i,j,k] e_k``."""

    def __init__(self, p: int, labels, table, unit=None, check: bool = True):
        PrimeField(p)  # primality check
        self.p = p
        self.labels = list(labels)
        self.dim = len(self.labels)
        T = np.asarray(table, dtype=np.int64) % p
        if T.shape != (self.dim,) * 3:
            raise AlgebraError(f"structure tensor must have shape {(self.dim,) * 3}")
        self.T = T
        if unit is None:
            unit = np.zeros(self.dim, dtype=np.int64)
            unit[0] = 1
        self.unit = as_vec(unit, p)
        if check:
            bad = self.check()
            if bad:
                raise AlgebraError(bad)

    # -- construction -------------------------------------------------------
    @classmethod
    def from_products(cls, p, labels, products: dict, check=True) -> FiniteAlgebra:
        """``products[(i, j)]`` is a vector; missing pairs are zero.

        The first label is the unit, and products are filled in symmetrically.
        """
        d = len(labels)
        T = np.zeros((d, d, d), dtype=np.int64)
        for i in range(d):
            T[0, i, i] = T[i, 0, i] = 1
        for (i, j), v in products.items():
            if i == 0 or j == 0:
                continue
            T[i, j] = T[j, i] = as_vec(v, p)
        return cls(p, labels, T, check=check)

    @classmethod
    def from_json(cls, data) -> FiniteAlgebra:
        if isinstance(data, str):
            data = json.loads(data)
        unknown = set(data) - {"p", "basis", "mult"}
        if unknown:
            raise AlgebraError(f"unknown fields in finite algebra: {sorted(unknown)}")
        p, labels = int(data["p"]), [str(x) for x in data["basis"]]
        if not labels or labels[0] != "1":
            raise AlgebraError('the first basis label must be "1"')
        if len(set(labels)) != len(labels):
            raise AlgebraError("duplicate basis labels")
        index = {l: i for i, l in enumerate(labels)}
        products = {}
        for key, val in data.get("mult", {}).items():
            parts = key.split("*")
            if len(parts) != 2 or any(x.strip() not in index for x in parts):
                raise AlgebraError(f"bad product key {key!r}")
            i, j = (index[x.strip()] for x in parts)
            v = _parse_combination(p, index, str(val))
            prev = products.get((j, i))
            if prev is not None and not np.array_equal(prev, v):
                raise AlgebraError(f"{key!r} contradicts the reversed product")
            products[(i, j)] = v
        return cls.from_products(p, labels, products)

    def to_json(self) -> dict:
        mult = {}
        for i in range(1, self.dim):
            for j in range(i, self.dim):
                v = self.T[i, j]
                if v.any():
                    mult[f"{self.labels[i]}*{self.labels[j]}"] = self.format(v)
        return {"p": self.p, "basis": self.labels, "mult": mult}

    def check(self) -> str | None:
        T, p = self.T, self.p
        if not np.array_equal(T, T.transpose(1, 0, 2)):
            return "multiplication is not commutative"
        L = np.einsum("i,ijk->jk", self.unit, T) % p
        if not np.array_equal(L, np.eye(self.dim, dtype=np.int64)):
            return "the unit vector does not act as the identity"
        # (e_i e_j) e_l  versus  e_i (e_j e_l)
        left = np.einsum("ijm,mlk->ijlk", T, T) % p
        right = np.einsum("jlm,imk->ijlk", T, T) % p
        bad = np.argwhere(left != right)
        if bad.size:
            i, j, l = (int(x) for x in bad[0][:3])
            return f"associativity fails on ({self.labels[i]}, {self.labels[j]}, {self.labels[l]})"
        return None

    # -- elements -----------------------------------------------------------
    def zero(self) -> np.ndarray:
        return np.zeros(self.dim, dtype=np.int64)

    def one(self) -> np.ndarray:
        return self.unit.copy()

    def basis(self, i) -> np.ndarray:
        if isinstance(i, str):
            i = self.labels.index(i)
        v = self.zero()
        v[i] = 1
        return v

    def vec(self, x) -> np.ndarray:
        if isinstance(x, str):
            return _parse_combination(self.p, {l: i for i, l in enumerate(self.labels)}, x)
        if isinstance(x, int):
            return (x * self.unit) % self.p
        return as_vec(x, self.p)

    def mul(self, x, y) -> np.ndarray:
        return np.einsum("i,j,ijk->k", as_vec(x, self.p), as_vec(y, self.p), self.T) % self.p

    def left_matrix(self, x) -> np.ndarray:
        """Matrix ``M`` with ``y @ M == x*y``."""
        return np.einsum("i,ijk->jk", as_vec(x, self.p), self.T) % self.p

    def basis_products(self, v) -> list:
        return [self.mul(self.basis(i), v) for i in range(self.dim)]

    def is_unit(self, x) -> bool:
        return RowSpace(self.p, self.dim, self.left_matrix(x)).dim == self.dim

    def inverse(self, x) -> np.ndarray:
        y = solve_mod_p(self.left_matrix(x), self.unit, self.p)
        if y is None:
            raise NotInvertibleError(f"{self.format(x)} is not a unit")
        return y

    def format(self, x) -> str:
        x = as_vec(x, self.p)
        terms = []
        for c, l in zip(x, self.labels):
            if c:
                terms.append(l if c == 1 and l != "1" else (str(c) if l == "1" else f"{c}*{l}"))
        return " + ".join(terms) if terms else "0"

    def __repr__(self):
        return f"FiniteAlgebra(dim {self.dim} over GF({self.p}))"

    def ring(self) -> FiniteAlgebraRing:
        return FiniteAlgebraRing(self)


_TERM = re.compile(r"^(?:(\d+)\s*\*\s*)?([A-Za-z_][\w]*|\d+)$")


def _parse_combination(p: int, index: dict, text: str) -> np.ndarray:
    v = np.zeros(len(index), dtype=np.int64)
    text = text.replace(" ", "")
    if text in ("", "0"):
        return v
    for sign, term in re.findall(r"([+-]?)([^+-]+)", text):
        m = _TERM.match(term)
        if not m:
            raise AlgebraError(f"cannot read term {term!r}")
        coeff, name = m.groups()
        c = int(coeff) if coeff else 1
        if name.isdigit() and name not in index:
            c, name = c * int(name), "1"
        if name not in index:
            raise AlgebraError(f"unknown basis label {name!r}")
        v[index[name]] += -c if sign == "-" else c
    return v % p


class FiniteAlgebraRing(Ring):
    """Ring view of a :class:`FiniteAlgebra` so that building data can live over it."""

    def __init__(self, algebra: FiniteAlgebra):
        self.algebra = algebra
        self.characteristic = algebra.p

    def key(self):
        A = self.algebra
        return ("FA", A.p, tuple(A.labels), A.T.tobytes())

    def describe(self):
        return f"finite algebra (dim {self.algebra.dim} over GF({self.algebra.p}))"

    def _zero(self):
        return (0,) * self.algebra.dim

    def _one(self):
        return tuple(int(x) for x in self.algebra.unit)

    def _add(self, a, b):
        p = self.algebra.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def _neg(self, a):
        p = self.algebra.p
        return tuple((-x) % p for x in a)

    def _mul(self, a, b):
        return tuple(int(x) for x in self.algebra.mul(a, b))

    def _from_int(self, n):
        return tuple(int(x) for x in (n * self.algebra.unit) % self.algebra.p)

    def _format(self, a):
        return self.algebra.format(a)

    def gens(self):
        return {l: self.elem(tuple(int(x) for x in self.algebra.basis(i)))
                for i, l in enumerate(self.algebra.labels) if l.isidentifier()}

    def is_unit(self, a):
        return self.algebra.is_unit(self._coerce_raw(a))

    def _inverse_raw(self, a):
        return tuple(int(x) for x in self.algebra.inverse(a))

    def vector(self, x) -> np.ndarray:
        return as_vec(self._coerce_raw(x), self.algebra.p)


def monomial_algebra(p: int, variables, monomials, reduce) -> FiniteAlgebra:
    """Algebra with basis given by exponent tuples ``monomials`` (starting with 0).

    ``reduce(exponent)`` returns ``{monomial: coeff}`` for any product of two
    basis monomials, expressed in the basis.
    """
    monomials = [tuple(m) for m in monomials]
    index = {m: i for i, m in enumerate(monomials)}
    products = {}
    for (i, m), (j, n) in itertools.product(enumerate(monomials), repeat=2):
        if j < i:
            continue
        prod = tuple(a + b for a, b in zip(m, n))
        v = np.zeros(len(monomials), dtype=np.int64)
        for mono, c in reduce(prod).items():
            v[index[mono]] += c
        products[(i, j)] = v
    labels = [_mono_label(variables, m) for m in monomials]
    return FiniteAlgebra.from_products(p, labels, products)


def _mono_label(variables, m) -> str:
    parts = []
    for x, e in zip(variables, m):
        if e:
            parts.append(x if e == 1 else f"{x}{e}")
    return "".join(parts) or "1"
