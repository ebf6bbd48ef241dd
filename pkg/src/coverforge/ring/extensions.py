"""Monic univariate quotients (number rings) and one-element localizations."""

from __future__ import annotations

from fractions import Fraction

from coverforge.ring.base import (
    CapabilityError,
    Elem,
    IntegerRing,
    NotInvertibleError,
    PrimeField,
    RationalField,
    Ring,
    RingMismatchError,
)
from coverforge.ring.linalg import bareiss_det, rational_solve
from coverforge.ring.poly import PolynomialRing


def _scalar_ring(ring: Ring) -> Ring:
    while isinstance(ring, QuotientRing):
        ring = ring.base
    return ring


class QuotientRing(Ring):
    """``base[name]/(modulus)`` for a monic modulus with coefficients in ``base``.

    Iterating the construction gives rings such as ZZ[i, xi]; elements are
    coefficient tuples of length ``deg(modulus)`` over ``base``.
    """

    def __init__(self, base: Ring, name: str, modulus):
        self.base = base
        self.name = name
        if isinstance(modulus, Elem):
            pr = modulus.ring
            if not isinstance(pr, PolynomialRing) or pr.nvars != 1 or pr.base != base:
                raise ValueError("modulus must be a univariate polynomial over the base ring")
            deg = pr.total_degree(modulus)
            coeffs = [base.zero.v] * (deg + 1)
            for e, c in modulus.v:
                coeffs[e[0]] = c
        else:
            coeffs = [base._coerce_raw(c) for c in modulus]
        if len(coeffs) < 2 or not base._eq(coeffs[-1], base._one()):
            raise ValueError("modulus must be monic of degree >= 1")
        self.modulus = tuple(coeffs)
        self.degree = len(coeffs) - 1
        self.characteristic = base.characteristic

    def key(self):
        return ("quot", self.base.key(), self.name, self.modulus)

    def describe(self):
        pr = PolynomialRing(self.base, self.name)
        m = pr._format(pr._from_dict({(i,): c for i, c in enumerate(self.modulus)}))
        return f"{self.base.describe()}[{self.name}]/({m.replace(' ', '')})"

    def _zero(self):
        return (self.base._zero(),) * self.degree

    def _one(self):
        return (self.base._one(),) + (self.base._zero(),) * (self.degree - 1)

    def _from_int(self, n):
        return (self.base._from_int(n),) + (self.base._zero(),) * (self.degree - 1)

    def _coerce_raw(self, x):
        if isinstance(x, Elem):
            if x.ring == self:
                return x.v
            try:
                c = self.base._coerce_raw(x)
            except RingMismatchError:
                raise RingMismatchError(f"cannot use an element of {x.ring} in {self}") from None
            return (c,) + (self.base._zero(),) * (self.degree - 1)
        return super()._coerce_raw(x)

    def _is_zero(self, a):
        return all(self.base._is_zero(c) for c in a)

    def _eq(self, a, b):
        return all(self.base._eq(x, y) for x, y in zip(a, b))

    def _add(self, a, b):
        add = self.base._add
        return tuple(add(x, y) for x, y in zip(a, b))

    def _neg(self, a):
        return tuple(self.base._neg(x) for x in a)

    def _mul(self, a, b):
        B = self.base
        d = self.degree
        prod = [B._zero()] * (2 * d - 1)
        for i, x in enumerate(a):
            if B._is_zero(x):
                continue
            for j, y in enumerate(b):
                if B._is_zero(y):
                    continue
                prod[i + j] = B._add(prod[i + j], B._mul(x, y))
        for k in range(2 * d - 2, d - 1, -1):
            c = prod[k]
            if B._is_zero(c):
                continue
            prod[k] = B._zero()
            for i in range(d):
                prod[k - d + i] = B._sub(prod[k - d + i], B._mul(c, self.modulus[i]))
        return tuple(prod[:d])

    def _format(self, a):
        pr = PolynomialRing(self.base, self.name)
        return pr._format(pr._from_dict({(i,): c for i, c in enumerate(a)}))

    def gens(self):
        g = {self.name: self.gen()}
        for name, val in self.base.gens().items():
            g.setdefault(name, self(val))
        return g

    def gen(self) -> Elem:
        if self.degree == 1:
            return Elem(self, (self.base._neg(self.modulus[0]),))
        z = [self.base._zero()] * self.degree
        z[1] = self.base._one()
        return Elem(self, tuple(z))

    # -- flattening to coordinates over the innermost scalar ring -------------
    def flat_rank(self) -> int:
        inner = self.base.flat_rank() if isinstance(self.base, QuotientRing) else 1
        return self.degree * inner

    def to_flat(self, a) -> list:
        if isinstance(self.base, QuotientRing):
            out = []
            for c in a:
                out.extend(self.base.to_flat(c))
            return out
        return list(a)

    def from_flat(self, vec):
        if isinstance(self.base, QuotientRing):
            k = self.base.flat_rank()
            return tuple(self.base.from_flat(vec[i * k:(i + 1) * k]) for i in range(self.degree))
        return tuple(self.base._coerce_raw(v) for v in vec)

    def _basis_raw(self):
        n = self.flat_rank()
        S = _scalar_ring(self)
        for i in range(n):
            v = [S._zero()] * n
            v[i] = S._one()
            yield self.from_flat(v)

    def mult_matrix(self, a) -> list:
        """Matrix (rows = coordinates) of multiplication by ``a`` on the flat basis."""
        cols = [self.to_flat(self._mul(a, b)) for b in self._basis_raw()]
        n = len(cols)
        return [[cols[j][i] for j in range(n)] for i in range(n)]

    def norm(self, a):
        """Determinant of multiplication by ``a`` over the scalar ring."""
        a = self._coerce_raw(a)
        S = _scalar_ring(self)
        m = self.mult_matrix(a)
        if isinstance(S, IntegerRing):
            return bareiss_det(m)
        if isinstance(S, (RationalField, PrimeField)):
            return _field_det(S, m)
        raise CapabilityError(f"norm is not supported over {S}")

    def _solve(self, a, b):
        S = _scalar_ring(self)
        if isinstance(S, IntegerRing):
            x = rational_solve(self.mult_matrix(a), self.to_flat(b))
            if x is None or any(v.denominator != 1 for v in x):
                return None
            return self.from_flat([int(v) for v in x])
        if isinstance(S, RationalField):
            x = rational_solve(self.mult_matrix(a), self.to_flat(b))
            return None if x is None else self.from_flat(x)
        raise CapabilityError(f"exact division is not supported in {self}")

    def _domain(self) -> bool:
        return isinstance(_scalar_ring(self), (IntegerRing, RationalField))

    def is_unit(self, a):
        a = self._coerce_raw(a)
        S = _scalar_ring(self)
        n = self.norm(Elem(self, a))
        if isinstance(S, IntegerRing):
            return abs(n) == 1
        return n != 0

    def _inverse_raw(self, a):
        if not self.is_unit(Elem(self, a)):
            raise NotInvertibleError(f"{self._format(a)} is not a unit in {self}")
        return self._solve(a, self._one())

    def divides(self, a, b):
        a, b = self._coerce_raw(a), self._coerce_raw(b)
        if self._is_zero(a):
            return self.zero if self._is_zero(b) else None
        if self.norm(Elem(self, a)) == 0:
            raise CapabilityError(f"division by a zero divisor in {self}")
        q = self._solve(a, b)
        return None if q is None else Elem(self, q)


def _field_det(S: Ring, m) -> object:
    n = len(m)
    a = [[S._coerce_raw(Fraction(v)) if isinstance(S, RationalField) else v for v in row] for row in m]
    det = S._one()
    for c in range(n):
        p = next((i for i in range(c, n) if not S._is_zero(a[i][c])), None)
        if p is None:
            return S._zero()
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = S._neg(det)
        det = S._mul(det, a[c][c])
        inv = S._inverse_raw(a[c][c])
        for i in range(c + 1, n):
            if not S._is_zero(a[i][c]):
                f = S._mul(a[i][c], inv)
                a[i] = [S._sub(x, S._mul(f, y)) for x, y in zip(a[i], a[c])]
    return det


class Localization(Ring):
    """``base[1/u]`` for one declared element ``u`` of a domain.

    Elements are pairs ``(numerator, k)`` meaning ``numerator / u**k``; the pair
    is kept with ``k`` minimal, and equality is tested cross-multiplied.
    """

    def __init__(self, base: Ring, u):
        self.base = base
        self.u = base(u) if not isinstance(u, Elem) else u
        if self.u.ring != base:
            raise RingMismatchError("localizing element must lie in the base ring")
        if self.u.is_zero():
            raise ValueError("cannot invert zero")
        self.characteristic = base.characteristic

    def key(self):
        return ("loc", self.base.key(), self.u.v)

    def describe(self):
        return f"{self.base.describe()}[1/{self.u}]"

    def _canon(self, num, k):
        B = self.base
        if B._is_zero(num):
            return (B._zero(), 0)
        while k > 0:
            try:
                q = B.divides(self.u, Elem(B, num))
            except CapabilityError:
                break
            if q is None:
                break
            num, k = q.v, k - 1
        return (num, k)

    def _zero(self):
        return (self.base._zero(), 0)

    def _one(self):
        return (self.base._one(), 0)

    def _from_int(self, n):
        return (self.base._from_int(n), 0)

    def _coerce_raw(self, x):
        if isinstance(x, Elem):
            if x.ring == self:
                return x.v
            try:
                return (self.base._coerce_raw(x), 0)
            except RingMismatchError:
                raise RingMismatchError(f"cannot use an element of {x.ring} in {self}") from None
        return super()._coerce_raw(x)

    def _upow(self, k):
        return self.base._pow(self.u.v, k)

    def _is_zero(self, a):
        return self.base._is_zero(a[0])

    def _eq(self, a, b):
        B = self.base
        return B._eq(B._mul(a[0], self._upow(b[1])), B._mul(b[0], self._upow(a[1])))

    def _add(self, a, b):
        B = self.base
        (x, j), (y, k) = a, b
        if j == k:
            return self._canon(B._add(x, y), j)
        if j < k:
            return self._canon(B._add(B._mul(x, self._upow(k - j)), y), k)
        return self._canon(B._add(x, B._mul(y, self._upow(j - k))), j)

    def _neg(self, a):
        return (self.base._neg(a[0]), a[1])

    def _mul(self, a, b):
        return self._canon(self.base._mul(a[0], b[0]), a[1] + b[1])

    def _format(self, a):
        num, k = a
        s = self.base._format(num)
        if k == 0:
            return s
        us = str(self.u)
        den = us if k == 1 else f"{us}^{k}"
        if any(ch in s[1:] for ch in "+- "):
            s = f"({s})"
        return f"{s}/{den}"

    def __hash__(self):
        return hash(self.key())

    def gens(self):
        return {name: self(val) for name, val in self.base.gens().items()}

    def numerator(self, a) -> Elem:
        a = self._coerce_raw(a)
        return Elem(self.base, a[0])

    def _multiplicity_bound(self, num) -> int:
        """Power of ``u`` large enough that ``num | u**N`` whenever it divides any power."""
        B = self.base
        if isinstance(B, IntegerRing):
            return abs(num).bit_length() + 1
        if isinstance(B, QuotientRing) and isinstance(_scalar_ring(B), IntegerRing):
            return abs(B.norm(Elem(B, num))).bit_length() + 1
        if isinstance(B, PolynomialRing) and isinstance(B.base, (IntegerRing, RationalField, PrimeField)):
            e = Elem(B, num)
            content_bits = 0
            if isinstance(B.base, IntegerRing):
                content_bits = max(abs(c).bit_length() for _, c in num)
            return B.total_degree(e) + content_bits + 1
        raise CapabilityError(f"unit test is not supported in {self}")

    def _unit_witness(self, num):
        """``(N, q)`` with ``u**N == num*q`` or ``None``."""
        B = self.base
        if B._is_zero(num):
            return None
        n = self._multiplicity_bound(num)
        q = B.divides(Elem(B, num), Elem(B, self._upow(n)))
        return None if q is None else (n, q.v)

    def is_unit(self, a):
        a = self._coerce_raw(a)
        return self._unit_witness(a[0]) is not None

    def _inverse_raw(self, a):
        w = self._unit_witness(a[0])
        if w is None:
            raise NotInvertibleError(f"{self._format(a)} is not a unit in {self}")
        n, q = w
        # (num/u^k)^-1 = u^k/num = q*u^k/u^n
        return self._canon(self.base._mul(q, self._upow(a[1])), n)

    def divides(self, a, b):
        a, b = self._coerce_raw(a), self._coerce_raw(b)
        B = self.base
        if self._is_zero(a):
            return self.zero if self._is_zero(b) else None
        # a | b in base[1/u] iff num(a) | num(b)*u^N for N large
        n = self._multiplicity_bound(a[0])
        q = B.divides(Elem(B, a[0]), Elem(B, B._mul(b[0], self._upow(n))))
        if q is None:
            return None
        # b/a = (q / u^n) * u^{ka - kb}
        return Elem(self, self._canon(B._mul(q.v, self._upow(a[1])), n + b[1]))
