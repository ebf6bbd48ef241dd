"""Independent reference computations used by the tests.

Nothing here imports the algorithms under test: polynomial arithmetic goes
through sympy, congruences through a plain union-find, finite algebras through
dense integer arrays reduced mod p by hand.
"""

from __future__ import annotations

import itertools
from functools import reduce
from math import gcd

import sympy

S = sympy.Symbol("s")


# -- congruence closure --------------------------------------------------------
class UnionFind:
    def __init__(self):
        self.parent = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb


def vectors_up_to(rank, bound, weights=None):
    """All exponent vectors with ``weights . x <= bound`` (total degree by default)."""
    w = weights or (1,) * rank

    def rec(i, left):
        if i == rank:
            yield ()
            return
        for k in range(left // w[i] + 1):
            for rest in rec(i + 1, left - k * w[i]):
                yield (k,) + rest

    return list(rec(0, bound))


def bfs_closure(rank, relations, bound, weights=None) -> UnionFind:
    """Join ``x`` and ``x - u + v`` for every relation whenever both stay in the region."""
    w = weights or (1,) * rank
    region = vectors_up_to(rank, bound, w)
    inside = set(region)
    uf = UnionFind()
    for x in region:
        uf.find(x)
        for u, v in relations:
            for a, b in ((u, v), (v, u)):
                if all(xi >= ai for xi, ai in zip(x, a)):
                    y = tuple(xi - ai + bi for xi, ai, bi in zip(x, a, b))
                    if y in inside:
                        uf.union(x, y)
    return uf


# -- polynomials and matrices ----------------------------------------------------
def to_sympy(elem):
    """A univariate polynomial element (printed with ``^``) as a sympy expression."""
    return sympy.sympify(str(elem).replace("^", "**"), locals={"s": S, "x": sympy.Symbol("x")})


def gcd_of_minors_divisors(rows, x=None):
    """Elementary divisors from determinantal divisors ``D_k / D_{k-1}`` (over Z or Q[x])."""
    M = sympy.Matrix(rows)
    m, n = M.shape
    ds = [sympy.Integer(1)]
    for k in range(1, min(m, n) + 1):
        minors = [M.extract(list(r), list(c)).det() for r in itertools.combinations(range(m), k)
                  for c in itertools.combinations(range(n), k)]
        minors = [sympy.expand(v) for v in minors if sympy.expand(v) != 0]
        if not minors:
            break
        if x is None:
            ds.append(sympy.Integer(reduce(gcd, [abs(int(v)) for v in minors])))
        else:
            g = reduce(lambda a, b: sympy.gcd(a, b), minors)
            ds.append(sympy.Poly(g, x).monic().as_expr())
    return [sympy.simplify(ds[i] / ds[i - 1]) for i in range(1, len(ds))]


# -- cover algebras ------------------------------------------------------------------
def table_as_sympy(d):
    """``{(a, b): expr}`` for all pairs of the datum, both orders."""
    A = d.A
    return {(a, b): to_sympy(d.s(a, b)) for a in A for b in A}


def algebra_is_associative(A, table) -> bool:
    """Multiply basis triples by hand: ``(v_a v_b) v_c`` against ``v_a (v_b v_c)``."""
    for a in A:
        for b in A:
            if sympy.expand(table[(a, b)] - table[(b, a)]) != 0:
                return False
            ab = A.add(a, b)
            for c in A:
                bc = A.add(b, c)
                left = table[(a, b)] * table[(ab, c)]
                right = table[(b, c)] * table[(a, bc)]
                if sympy.expand(left - right) != 0:
                    return False
    return True


def trace_determinant(A, table):
    """``det Tr(v_a v_b)`` with ``Tr(v_c) = |A| * [c = 0] * ...`` computed from the table."""
    els = list(A)
    n = len(els)

    def trace_of_basis(c):
        # v_c v_x = s(c, x) v_{c+x}; diagonal only when c = 0
        if c != A.zero:
            return sympy.Integer(0)
        return sum(table[(c, x)] for x in els)

    rows = []
    for a in els:
        row = []
        for b in els:
            row.append(table[(a, b)] * trace_of_basis(A.add(a, b)))
        rows.append(row)
    return sympy.expand(sympy.Matrix(rows).det()) if n else sympy.Integer(1)


# -- linear algebra mod p -------------------------------------------------------------
def rank_mod(rows, p) -> int:
    M = [[int(x) % p for x in r] for r in rows]
    rank, col = 0, 0
    ncols = len(M[0]) if M else 0
    while rank < len(M) and col < ncols:
        piv = next((i for i in range(rank, len(M)) if M[i][col]), None)
        if piv is None:
            col += 1
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = pow(M[rank][col], -1, p)
        M[rank] = [x * inv % p for x in M[rank]]
        for i in range(len(M)):
            if i != rank and M[i][col]:
                f = M[i][col]
                M[i] = [(x - f * y) % p for x, y in zip(M[i], M[rank])]
        rank += 1
        col += 1
    return rank


def span_contains(rows, v, p) -> bool:
    return rank_mod(list(rows) + [list(v)], p) == rank_mod(rows, p)
