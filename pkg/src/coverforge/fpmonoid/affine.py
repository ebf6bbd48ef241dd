"""Affine monoids: submonoids of Z^k given by finitely many generators."""

from __future__ import annotations

from functools import lru_cache

from coverforge.ring import CapabilityError


def _dot(w, x):
    return sum(a * b for a, b in zip(w, x))


class AffineMonoid:
    def __init__(self, generators, ambient_rank: int | None = None):
        gens = [tuple(int(c) for c in g) for g in generators]
        if ambient_rank is None:
            if not gens:
                raise ValueError("ambient rank needed for an empty generator list")
            ambient_rank = len(gens[0])
        if any(len(g) != ambient_rank for g in gens):
            raise ValueError("generators must lie in the ambient lattice")
        self.rank = ambient_rank
        self.generators = tuple(gens)

    def zero(self):
        return (0,) * self.rank

    def add(self, x, y):
        return tuple(a + b for a, b in zip(x, y))

    def default_grading(self):
        """The coordinate-sum functional if it is positive on every nonzero generator."""
        w = (1,) * self.rank
        if all(_dot(w, g) >= 1 for g in self.generators if any(g)):
            return w
        return None

    def contains(self, x, grading=None) -> bool:
        return affine_membership(self, x, grading) is not None

    def minimal_generators(self, grading=None) -> list:
        """Drop zero, repeated, and decomposable generators; sorted output."""
        gens = sorted({g for g in self.generators if any(g)})
        keep = []
        for g in gens:
            others = AffineMonoid([h for h in gens if h != g], self.rank)
            if affine_membership(others, g, grading or self.default_grading()) is None:
                keep.append(g)
        return keep

    def __repr__(self):
        return f"AffineMonoid({list(self.generators)})"


def affine_membership(M: AffineMonoid, x, grading=None):
    """Coefficients ``c >= 0`` with ``sum c_i g_i == x``, or ``None``.

    The search is finite because the grading is >= 1 on every nonzero generator.
    """
    x = tuple(int(c) for c in x)
    if len(x) != M.rank:
        raise ValueError("vector is not in the ambient lattice")
    if grading is None:
        grading = M.default_grading()
        if grading is None:
            raise CapabilityError("no positive grading available; membership search would be unbounded")
    w = tuple(grading)
    gens = [g for g in M.generators]
    idx = [i for i, g in enumerate(gens) if any(g)]
    for i in idx:
        if _dot(w, gens[i]) < 1:
            raise CapabilityError("supplied grading is not positive on the generators")
    if not any(x):
        return [0] * len(gens)
    if _dot(w, x) < 1:
        return None

    weights = [_dot(w, gens[i]) for i in idx]

    @lru_cache(maxsize=None)
    def search(k, rest):
        if not any(rest):
            return ()
        if k == len(idx):
            return None
        g, wg = gens[idx[k]], weights[k]
        budget = _dot(w, rest) // wg
        for c in range(budget, -1, -1):
            r = tuple(a - c * b for a, b in zip(rest, g))
            if _dot(w, r) < 0:
                continue
            sub = search(k + 1, r)
            if sub is not None:
                return (c,) + sub
        return None

    found = search(0, x)
    if found is None:
        return None
    coeffs = [0] * len(gens)
    for k, c in enumerate(found):
        coeffs[idx[k]] = c
    return coeffs
