"""Parent/element scaffolding shared by every exact ring in the package.

A :class:`Ring` owns the arithmetic on *raw* values (ints, Fractions, tuples);
:class:`Elem` is a thin wrapper that carries its ring and provides operator
syntax.  Raw values are always canonical, so equality of raw values is ring
equality except where a ring overrides :meth:`Ring.eq`.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


class RingError(Exception):
    """Base class for ring errors."""


class RingMismatchError(RingError, TypeError):
    pass


class CapabilityError(RingError):
    """The ring cannot answer this question (never a wrong answer)."""


class NotInvertibleError(RingError, ZeroDivisionError):
    pass


class Ring:
    """Abstract commutative ring with identity."""

    is_field = False
    characteristic = 0

    # -- raw arithmetic, overridden by subclasses ---------------------------
    def _zero(self):
        raise NotImplementedError

    def _one(self):
        raise NotImplementedError

    def _add(self, a, b):
        raise NotImplementedError

    def _neg(self, a):
        raise NotImplementedError

    def _mul(self, a, b):
        raise NotImplementedError

    def _from_int(self, n: int):
        raise NotImplementedError

    def _is_zero(self, a) -> bool:
        return a == self._zero()

    def _eq(self, a, b) -> bool:
        return a == b

    def _format(self, a) -> str:
        return str(a)

    # -- identity ------------------------------------------------------------
    def key(self):
        raise NotImplementedError

    def __eq__(self, other):
        return isinstance(other, Ring) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return self.describe()

    def describe(self) -> str:
        raise NotImplementedError

    # -- element construction ------------------------------------------------
    def elem(self, raw) -> Elem:
        return Elem(self, raw)

    @property
    def zero(self) -> Elem:
        return Elem(self, self._zero())

    @property
    def one(self) -> Elem:
        return Elem(self, self._one())

    def gens(self) -> dict:
        """Named generators, used by the expression parser."""
        return {}

    def _coerce_raw(self, x):
        """Return the raw value of ``x`` in this ring or raise TypeError."""
        if isinstance(x, Elem):
            if x.ring == self:
                return x.v
            raise RingMismatchError(f"cannot use an element of {x.ring} in {self}")
        if isinstance(x, bool):
            raise TypeError("bool is not a ring element")
        if isinstance(x, int):
            return self._from_int(x)
        if isinstance(x, Fraction):
            if x.denominator == 1:
                return self._from_int(x.numerator)
            return self._mul(self._from_int(x.numerator), self._inverse_raw(self._from_int(x.denominator)))
        raise TypeError(f"cannot coerce {type(x).__name__} into {self}")

    def __call__(self, x) -> Elem:
        if isinstance(x, str):
            from coverforge.ring.parse import parse_element

            return parse_element(self, x)
        return Elem(self, self._coerce_raw(x))

    # -- derived operations --------------------------------------------------
    def _sub(self, a, b):
        return self._add(a, self._neg(b))

    def _pow(self, a, n: int):
        if n < 0:
            return self._pow(self._inverse_raw(a), -n)
        result = self._one()
        base = a
        while n:
            if n & 1:
                result = self._mul(result, base)
            n >>= 1
            if n:
                base = self._mul(base, base)
        return result

    def _inverse_raw(self, a):
        raise CapabilityError(f"inversion is not supported in {self}")

    def is_unit(self, a) -> bool:
        raise CapabilityError(f"unit test is not supported in {self}")

    def inverse(self, a) -> Elem:
        return Elem(self, self._inverse_raw(self._coerce_raw(a)))

    def divides(self, a, b):
        """Return ``q`` with ``b == a*q`` or ``None``."""
        raise CapabilityError(f"exact division is not supported in {self}")

    def ideal_equal(self, a, b) -> bool:
        """Whether ``a`` and ``b`` differ by a unit factor."""
        return self.divides(a, b) is not None and self.divides(b, a) is not None


class Elem:
    __slots__ = ("ring", "v")

    def __init__(self, ring: Ring, v):
        self.ring = ring
        self.v = v

    def _other(self, other):
        try:
            return self.ring._coerce_raw(other)
        except TypeError:
            if isinstance(other, Elem):
                raise
            return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Elem(self.ring, self.ring._add(self.v, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Elem(self.ring, self.ring._sub(self.v, o))

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Elem(self.ring, self.ring._sub(o, self.v))

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Elem(self.ring, self.ring._mul(self.v, o))

    __rmul__ = __mul__

    def __neg__(self):
        return Elem(self.ring, self.ring._neg(self.v))

    def __pos__(self):
        return self

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        return Elem(self.ring, self.ring._pow(self.v, n))

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Elem(self.ring, self.ring._mul(self.v, self.ring._inverse_raw(o)))

    def __eq__(self, other):
        try:
            o = self.ring._coerce_raw(other)
        except RingMismatchError:
            raise
        except TypeError:
            return NotImplemented
        return self.ring._eq(self.v, o)

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self):
        return hash((self.ring, self.v))

    def is_zero(self) -> bool:
        return self.ring._is_zero(self.v)

    def is_unit(self) -> bool:
        return self.ring.is_unit(self)

    def inverse(self) -> Elem:
        return self.ring.inverse(self)

    def __str__(self):
        return self.ring._format(self.v)

    def __repr__(self):
        return f"{self.ring._format(self.v)} in {self.ring.describe()}"


class IntegerRing(Ring):
    """The integers (arbitrary precision)."""

    def key(self):
        return ("ZZ",)

    def describe(self):
        return "ZZ"

    def _zero(self):
        return 0

    def _one(self):
        return 1

    def _add(self, a, b):
        return a + b

    def _neg(self, a):
        return -a

    def _mul(self, a, b):
        return a * b

    def _sub(self, a, b):
        return a - b

    def _from_int(self, n):
        return n

    def _is_zero(self, a):
        return a == 0

    def is_unit(self, a):
        return abs(self._coerce_raw(a)) == 1

    def _inverse_raw(self, a):
        if abs(a) != 1:
            raise NotInvertibleError(f"{a} is not a unit in ZZ")
        return a

    def divides(self, a, b):
        a, b = self._coerce_raw(a), self._coerce_raw(b)
        if a == 0:
            return self.zero if b == 0 else None
        q, r = divmod(b, a)
        return Elem(self, q) if r == 0 else None

    # Euclidean structure used by Smith normal form.
    def euclid_norm(self, a) -> int:
        return abs(a)

    def euclid_divmod(self, a, b):
        q, r = divmod(a, b)
        # keep |r| minimal so that the Euclidean norm strictly decreases
        if 2 * abs(r) > abs(b):
            r -= b
            q += 1
        return q, r

    def normal_unit(self, a):
        """Unit ``u`` such that ``u*a`` is the canonical associate."""
        return -1 if a < 0 else 1


class RationalField(Ring):
    is_field = True

    def key(self):
        return ("QQ",)

    def describe(self):
        return "QQ"

    def _zero(self):
        return Fraction(0)

    def _one(self):
        return Fraction(1)

    def _add(self, a, b):
        return a + b

    def _neg(self, a):
        return -a

    def _mul(self, a, b):
        return a * b

    def _sub(self, a, b):
        return a - b

    def _from_int(self, n):
        return Fraction(n)

    def _coerce_raw(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, Elem) and x.ring == ZZ:
            return Fraction(x.v)
        return super()._coerce_raw(x)

    def _is_zero(self, a):
        return a == 0

    def is_unit(self, a):
        return self._coerce_raw(a) != 0

    def _inverse_raw(self, a):
        if a == 0:
            raise NotInvertibleError("division by zero")
        return 1 / a

    def divides(self, a, b):
        a, b = self._coerce_raw(a), self._coerce_raw(b)
        if a == 0:
            return self.zero if b == 0 else None
        return Elem(self, b / a)

    def _format(self, a):
        return str(a)


class PrimeField(Ring):
    is_field = True

    def __init__(self, p: int):
        if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p

    def key(self):
        return ("GF", self.p)

    def describe(self):
        return f"GF({self.p})"

    def _zero(self):
        return 0

    def _one(self):
        return 1 % self.p

    def _add(self, a, b):
        return (a + b) % self.p

    def _neg(self, a):
        return (-a) % self.p

    def _mul(self, a, b):
        return (a * b) % self.p

    def _sub(self, a, b):
        return (a - b) % self.p

    def _from_int(self, n):
        return n % self.p

    def _coerce_raw(self, x):
        if isinstance(x, Elem) and x.ring == ZZ:
            return x.v % self.p
        return super()._coerce_raw(x)

    def _is_zero(self, a):
        return a == 0

    def is_unit(self, a):
        return self._coerce_raw(a) != 0

    def _inverse_raw(self, a):
        if a % self.p == 0:
            raise NotInvertibleError("division by zero")
        return pow(a, -1, self.p)

    def divides(self, a, b):
        a, b = self._coerce_raw(a), self._coerce_raw(b)
        if a == 0:
            return self.zero if b == 0 else None
        return Elem(self, (b * pow(a, -1, self.p)) % self.p)


ZZ = IntegerRing()
QQ = RationalField()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


def int_gcd_list(values) -> int:
    g = 0
    for v in values:
        g = gcd(g, v)
    return g
