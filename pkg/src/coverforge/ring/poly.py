"""Sparse multivariate polynomials over an exact coefficient ring.

Raw values are tuples of ``(exponent_tuple, coefficient_raw)`` pairs sorted in
decreasing graded-lex order (variables in declaration order, the first one
largest).  Zero coefficients are never stored.
"""

from __future__ import annotations

from coverforge.ring.base import (
    QQ,
    ZZ,
    CapabilityError,
    Elem,
    IntegerRing,
    NotInvertibleError,
    PrimeField,
    RationalField,
    Ring,
    RingMismatchError,
)


def grlex_key(exp):
    return (sum(exp), exp)


class PolynomialRing(Ring):
    def __init__(self, base: Ring, names):
        if isinstance(names, str):
            names = (names,)
        names = tuple(names)
        if not names or len(set(names)) != len(names):
            raise ValueError(f"bad variable list {names!r}")
        self.base = base
        self.names = names
        self.nvars = len(names)
        self.characteristic = base.characteristic
        self._zexp = (0,) * self.nvars

    def key(self):
        return ("poly", self.base.key(), self.names)

    def describe(self):
        return f"{self.base.describe()}[{','.join(self.names)}]"

    # -- raw helpers ---------------------------------------------------------
    def _from_dict(self, d):
        bz = self.base._is_zero
        items = [(e, c) for e, c in d.items() if not bz(c)]
        items.sort(key=lambda t: grlex_key(t[0]), reverse=True)
        return tuple(items)

    def _const(self, c):
        if self.base._is_zero(c):
            return ()
        return ((self._zexp, c),)

    def _zero(self):
        return ()

    def _one(self):
        return self._const(self.base._one())

    def _from_int(self, n):
        return self._const(self.base._from_int(n))

    def _coerce_raw(self, x):
        if isinstance(x, Elem):
            if x.ring == self:
                return x.v
            try:
                return self._const(self.base._coerce_raw(x))
            except RingMismatchError:
                raise RingMismatchError(f"cannot use an element of {x.ring} in {self}") from None
        return super()._coerce_raw(x)

    def _is_zero(self, a):
        return not a

    def _add(self, a, b):
        if not a:
            return b
        if not b:
            return a
        d = dict(a)
        badd = self.base._add
        for e, c in b:
            if e in d:
                d[e] = badd(d[e], c)
            else:
                d[e] = c
        return self._from_dict(d)

    def _neg(self, a):
        bneg = self.base._neg
        return tuple((e, bneg(c)) for e, c in a)

    def _mul(self, a, b):
        if not a or not b:
            return ()
        d = {}
        badd, bmul = self.base._add, self.base._mul
        for e1, c1 in a:
            for e2, c2 in b:
                e = tuple(x + y for x, y in zip(e1, e2))
                c = bmul(c1, c2)
                if e in d:
                    d[e] = badd(d[e], c)
                else:
                    d[e] = c
        return self._from_dict(d)

    def _scale(self, a, c):
        bmul = self.base._mul
        return self._from_dict({e: bmul(x, c) for e, x in a})

    def _format(self, a):
        if not a:
            return "0"
        parts = []
        for e, c in a:
            mono = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(self.names, e) if k
            )
            cs = self.base._format(c)
            simple = not any(ch in cs[1:] for ch in "+- ")
            if not mono:
                term = cs if simple else f"({cs})"
            elif self.base._eq(c, self.base._one()):
                term = mono
            elif cs == "-1":
                term = "-" + mono
            else:
                term = (cs if simple else f"({cs})") + "*" + mono
            parts.append(term)
        out = parts[0]
        for t in parts[1:]:
            out += " - " + t[1:] if t.startswith("-") else " + " + t
        return out

    # -- public API ----------------------------------------------------------
    def gens(self):
        g = {name: self.gen(i) for i, name in enumerate(self.names)}
        for name, val in self.base.gens().items():
            g.setdefault(name, Elem(self, self._const(val.v)))
        return g

    def gen(self, i=0) -> Elem:
        if isinstance(i, str):
            i = self.names.index(i)
        e = [0] * self.nvars
        e[i] = 1
        return Elem(self, ((tuple(e), self.base._one()),))

    def from_dict(self, d) -> Elem:
        """Build a polynomial from ``{exponent_tuple: coefficient}``."""
        return Elem(self, self._from_dict({tuple(e): self.base._coerce_raw(c) for e, c in d.items()}))

    def to_dict(self, a) -> dict:
        a = self._coerce_raw(a)
        return {e: Elem(self.base, c) for e, c in a}

    def coeff(self, a, exp) -> Elem:
        a = self._coerce_raw(a)
        for e, c in a:
            if e == tuple(exp):
                return Elem(self.base, c)
        return self.base.zero

    def total_degree(self, a) -> int:
        a = self._coerce_raw(a)
        return max((sum(e) for e, _ in a), default=-1)

    def is_constant(self, a) -> bool:
        a = self._coerce_raw(a)
        return not a or (len(a) == 1 and not any(a[0][0]))

    def constant_coeff(self, a) -> Elem:
        return self.coeff(a, self._zexp)

    def _domain_base(self) -> bool:
        return isinstance(self.base, (IntegerRing, RationalField, PrimeField))

    def is_unit(self, a):
        a = self._coerce_raw(a)
        if not self._domain_base():
            raise CapabilityError(f"unit test in {self} needs a domain coefficient ring")
        return self.is_constant(Elem(self, a)) and bool(a) and self.base.is_unit(Elem(self.base, a[0][1]))

    def _inverse_raw(self, a):
        if not self.is_unit(Elem(self, a)):
            raise NotInvertibleError(f"{self._format(a)} is not a unit in {self}")
        return self._const(self.base._inverse_raw(a[0][1]))

    def divides(self, a, b):
        """Exact division by leading terms; ``None`` when ``a`` does not divide ``b``."""
        a, b = self._coerce_raw(a), self._coerce_raw(b)
        if not a:
            return self.zero if not b else None
        la, ca = a[0]
        quotient = {}
        r = b
        while r:
            lr, cr = r[0]
            d = tuple(x - y for x, y in zip(lr, la))
            if min(d) < 0:
                return None
            c = self.base.divides(Elem(self.base, ca), Elem(self.base, cr))
            if c is None:
                return None
            quotient[d] = c.v
            r = self._sub(r, self._mul(a, ((d, c.v),)))
        return Elem(self, self._from_dict(quotient))

    # -- univariate Euclidean structure (k[s] with k a field) ----------------
    def _check_euclidean(self):
        if self.nvars != 1 or not self.base.is_field:
            raise CapabilityError(f"{self} is not a univariate polynomial ring over a field")

    def degree(self, a) -> int:
        return self.total_degree(a)

    def leading_coeff(self, a) -> Elem:
        a = self._coerce_raw(a)
        return Elem(self.base, a[0][1]) if a else self.base.zero

    def euclid_norm(self, a) -> int:
        self._check_euclidean()
        return a[0][0][0] if a else -1

    def euclid_divmod(self, a, b):
        self._check_euclidean()
        if not b:
            raise ZeroDivisionError("polynomial division by zero")
        db, cb = b[0][0][0], b[0][1]
        inv = self.base._inverse_raw(cb)
        q = {}
        r = a
        while r and r[0][0][0] >= db:
            dr, cr = r[0][0][0], r[0][1]
            c = self.base._mul(cr, inv)
            e = (dr - db,)
            q[e] = c
            r = self._sub(r, self._mul(b, ((e, c),)))
        return self._from_dict(q), r

    def normal_unit(self, a):
        self._check_euclidean()
        if not a:
            return self._one()
        return self._const(self.base._inverse_raw(a[0][1]))

    def monic(self, a) -> Elem:
        a = self._coerce_raw(a)
        return Elem(self, self._mul(a, self.normal_unit(a)))

    def gcd(self, a, b) -> Elem:
        a, b = self._coerce_raw(a), self._coerce_raw(b)
        while b:
            a, b = b, self.euclid_divmod(a, b)[1]
        return self.monic(Elem(self, a))

    def evaluate(self, a, values) -> Elem:
        """Substitute ring elements (of a common ring) for the variables."""
        a = self._coerce_raw(a)
        values = list(values)
        target = values[0].ring if values and isinstance(values[0], Elem) else self.base
        total = target.zero
        for e, c in a:
            term = target(Elem(self.base, c))
            for v, k in zip(values, e):
                if k:
                    term = term * v**k
            total = total + term
        return total


def poly_ring(base: Ring, names) -> PolynomialRing:
    return PolynomialRing(base, names)


__all__ = ["PolynomialRing", "poly_ring", "grlex_key", "ZZ", "QQ"]
