"""Finitely presented commutative monoids ``N^n / ~``."""

from __future__ import annotations

import json
from functools import cached_property

from coverforge.fpmonoid.completion import RewriteSystem, complete, order_key, vec_add


class MonoidPresentation:
    """``N^rank`` modulo the congruence generated by ``relations``.

    Relations are stored with ``lhs >= rhs`` in the term order.  The completed
    rewrite system is built lazily and cached.
    """

    def __init__(self, rank: int, relations=(), names=None):
        if rank < 0:
            raise ValueError("rank must be nonnegative")
        self.rank = rank
        rels = []
        for u, v in relations:
            u, v = tuple(int(a) for a in u), tuple(int(a) for a in v)
            if len(u) != rank or len(v) != rank:
                raise ValueError(f"relation {u} ~ {v} does not have length {rank}")
            if min(u + v, default=0) < 0:
                raise ValueError("relation entries must be nonnegative")
            if order_key(u) < order_key(v):
                u, v = v, u
            rels.append((u, v))
        self.relations = tuple(rels)
        self.names = tuple(names) if names is not None else tuple(f"g_{i}" for i in range(rank))
        if len(self.names) != rank:
            raise ValueError("one name per generator required")

    @classmethod
    def free(cls, rank: int, names=None) -> MonoidPresentation:
        return cls(rank, (), names)

    @cached_property
    def system(self) -> RewriteSystem:
        return complete(self.rank, self.relations)

    def complete(self) -> RewriteSystem:
        return self.system

    def zero(self) -> tuple:
        return (0,) * self.rank

    def gen(self, i: int) -> tuple:
        v = [0] * self.rank
        v[i] = 1
        return tuple(v)

    def _check(self, x):
        x = tuple(x)
        if len(x) != self.rank:
            raise ValueError(f"rank mismatch: expected length {self.rank}, got {len(x)}")
        return x

    def normal_form(self, x) -> tuple:
        return self.system.normal_form(self._check(x))

    def equal(self, x, y) -> bool:
        return self.normal_form(x) == self.normal_form(y)

    def add(self, x, y) -> tuple:
        return self.normal_form(vec_add(self._check(x), self._check(y)))

    def format(self, x) -> str:
        x = self._check(x)
        parts = [n if k == 1 else f"{k}*{n}" for n, k in zip(self.names, x) if k]
        return " + ".join(parts) if parts else "0"

    def standard_monomials(self, max_degree: int):
        """All irreducible vectors of total degree <= max_degree (one per element).

        Yields them degree by degree in a deterministic order.
        """
        rs = self.system
        level = [self.zero()]
        yield self.zero()
        seen = {self.zero()}
        for _ in range(max_degree):
            nxt = []
            for x in level:
                start = max((i for i, c in enumerate(x) if c), default=0)
                for i in range(start, self.rank):
                    y = list(x)
                    y[i] += 1
                    y = tuple(y)
                    if y in seen or rs.is_reducible(y):
                        continue
                    seen.add(y)
                    nxt.append(y)
            nxt.sort(key=order_key)
            yield from nxt
            level = nxt

    # -- JSON ----------------------------------------------------------------
    def to_json(self) -> dict:
        return {"rank": self.rank, "relations": [[list(u), list(v)] for u, v in self.relations]}

    @classmethod
    def from_json(cls, data) -> MonoidPresentation:
        if isinstance(data, str):
            data = json.loads(data)
        unknown = set(data) - {"rank", "relations", "names"}
        if unknown:
            raise ValueError(f"unknown fields in presentation: {sorted(unknown)}")
        if "rank" not in data:
            raise ValueError("presentation needs a 'rank' field")
        return cls(data["rank"], data.get("relations", []), data.get("names"))

    def __repr__(self):
        return f"MonoidPresentation(rank={self.rank}, relations={len(self.relations)})"
