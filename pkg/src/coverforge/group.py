"""Finite abelian groups given as products of cyclic groups."""

from __future__ import annotations

import itertools
import json
import re
from functools import cached_property
from math import gcd


class AbelianGroup:
    """``Z/n_1 x ... x Z/n_k``; elements are residue tuples in lexicographic order."""

    def __init__(self, cyclic_orders):
        orders = tuple(int(n) for n in cyclic_orders)
        if any(n < 1 for n in orders):
            raise ValueError("cyclic orders must be >= 1")
        self.orders = orders

    @classmethod
    def cyclic(cls, n: int) -> AbelianGroup:
        return cls((n,))

    @classmethod
    def trivial(cls) -> AbelianGroup:
        return cls(())

    def __eq__(self, other):
        return isinstance(other, AbelianGroup) and self.orders == other.orders

    def __hash__(self):
        return hash(("AbelianGroup", self.orders))

    def __repr__(self):
        if not self.orders:
            return "0"
        return " x ".join(f"Z/{n}" for n in self.orders)

    @cached_property
    def elements(self) -> tuple:
        return tuple(itertools.product(*(range(n) for n in self.orders)))

    @cached_property
    def _index(self) -> dict:
        return {g: i for i, g in enumerate(self.elements)}

    @property
    def order(self) -> int:
        out = 1
        for n in self.orders:
            out *= n
        return out

    def __len__(self):
        return self.order

    def __iter__(self):
        return iter(self.elements)

    @property
    def zero(self) -> tuple:
        return (0,) * len(self.orders)

    def nonzero(self) -> tuple:
        return self.elements[1:]

    def index(self, g) -> int:
        return self._index[self.elem(g)]

    def elem(self, g) -> tuple:
        if isinstance(g, int):
            g = (g,)
        g = tuple(int(a) % n for a, n in zip(g, self.orders))
        if len(g) != len(self.orders):
            raise ValueError(f"{g} is not an element of {self}")
        return g

    def add(self, a, b) -> tuple:
        return tuple((x + y) % n for x, y, n in zip(a, b, self.orders))

    def neg(self, a) -> tuple:
        return tuple((-x) % n for x, n in zip(a, self.orders))

    def mul(self, k: int, a) -> tuple:
        return tuple((k * x) % n for x, n in zip(a, self.orders))

    def order_of(self, a) -> int:
        out = 1
        for x, n in zip(a, self.orders):
            k = n // gcd(x, n)
            out = out * k // gcd(out, k)
        return out

    def gens(self) -> list:
        out = []
        for i in range(len(self.orders)):
            g = [0] * len(self.orders)
            g[i] = 1
            out.append(tuple(g))
        return out

    def format(self, a) -> str:
        if len(self.orders) == 1:
            return str(a[0])
        return "(" + ",".join(str(x) for x in a) + ")"

    def parse(self, text: str) -> tuple:
        t = text.strip().strip("()")
        if not t and not self.orders:
            return ()
        if "," in t or len(self.orders) == 1:
            parts = [p for p in re.split(r"[,\s]+", t) if p]
        elif t.isdigit() and len(t) == len(self.orders):
            parts = list(t)
        else:
            raise ValueError(f"cannot read group element {text!r} in {self}")
        if len(parts) != len(self.orders):
            raise ValueError(f"{text!r} does not have {len(self.orders)} components")
        return self.elem([int(p) for p in parts])

    def product(self, other: AbelianGroup) -> AbelianGroup:
        return AbelianGroup(self.orders + other.orders)

    def is_subgroup(self, subset) -> bool:
        s = {self.elem(g) for g in subset}
        if self.zero not in s:
            return False
        return all(self.add(a, b) in s for a in s for b in s)

    def to_json(self) -> dict:
        return {"cyclic_orders": list(self.orders)}

    @classmethod
    def from_json(cls, data) -> AbelianGroup:
        if isinstance(data, str):
            data = json.loads(data)
        if isinstance(data, list):
            return cls(data)
        unknown = set(data) - {"cyclic_orders"}
        if unknown:
            raise ValueError(f"unknown fields in group: {sorted(unknown)}")
        return cls(data["cyclic_orders"])


class GroupHom:
    """A homomorphism determined by the images of the standard generators."""

    def __init__(self, source: AbelianGroup, target: AbelianGroup, gen_images):
        self.source = source
        self.target = target
        self.gen_images = [target.elem(g) for g in gen_images]
        if len(self.gen_images) != len(source.orders):
            raise ValueError("one image per cyclic factor required")
        for n, img in zip(source.orders, self.gen_images):
            if target.mul(n, img) != target.zero:
                raise ValueError(f"image {img} is not killed by {n}")

    @classmethod
    def identity(cls, A: AbelianGroup) -> GroupHom:
        return cls(A, A, A.gens())

    @classmethod
    def zero(cls, source: AbelianGroup, target: AbelianGroup) -> GroupHom:
        return cls(source, target, [target.zero] * len(source.orders))

    @classmethod
    def projection(cls, source: AbelianGroup, factors) -> GroupHom:
        """Projection of a product onto the listed cyclic factors."""
        target = AbelianGroup([source.orders[i] for i in factors])
        imgs = []
        for i in range(len(source.orders)):
            g = [0] * len(factors)
            if i in factors:
                g[list(factors).index(i)] = 1
            imgs.append(tuple(g))
        return cls(source, target, imgs)

    def __call__(self, a) -> tuple:
        out = self.target.zero
        for c, img in zip(a, self.gen_images):
            out = self.target.add(out, self.target.mul(c, img))
        return out

    def is_surjective(self) -> bool:
        return len({self(a) for a in self.source}) == self.target.order
