"""Dense matrices over any ring of the package, stored as raw values."""

from __future__ import annotations

from coverforge.ring.base import Elem, Ring


class Matrix:
    __slots__ = ("ring", "nrows", "ncols", "_rows")

    def __init__(self, ring: Ring, rows, ncols: int | None = None):
        self.ring = ring
        conv = ring._coerce_raw
        self._rows = [[conv(x) for x in row] for row in rows]
        self.nrows = len(self._rows)
        if ncols is None:
            ncols = len(self._rows[0]) if self._rows else 0
        self.ncols = ncols
        if any(len(r) != ncols for r in self._rows):
            raise ValueError("ragged matrix rows")

    @classmethod
    def _raw(cls, ring, rows, ncols=None) -> Matrix:
        m = cls.__new__(cls)
        m.ring = ring
        m._rows = rows
        m.nrows = len(rows)
        m.ncols = ncols if ncols is not None else (len(rows[0]) if rows else 0)
        return m

    @classmethod
    def identity(cls, ring: Ring, n: int) -> Matrix:
        z, o = ring._zero(), ring._one()
        return cls._raw(ring, [[o if i == j else z for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, ring: Ring, nrows: int, ncols: int) -> Matrix:
        z = ring._zero()
        return cls._raw(ring, [[z] * ncols for _ in range(nrows)], ncols)

    def __getitem__(self, ij) -> Elem:
        i, j = ij
        return Elem(self.ring, self._rows[i][j])

    def raw_rows(self):
        return [list(r) for r in self._rows]

    def tolist(self):
        return [[Elem(self.ring, x) for x in row] for row in self._rows]

    def transpose(self) -> Matrix:
        return Matrix._raw(
            self.ring,
            [[self._rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)],
            self.nrows,
        )

    def __mul__(self, other: Matrix) -> Matrix:
        if not isinstance(other, Matrix):
            return NotImplemented
        if other.ring != self.ring:
            from coverforge.ring.base import RingMismatchError

            raise RingMismatchError("matrices over different rings")
        if self.ncols != other.nrows:
            raise ValueError("dimension mismatch")
        R = self.ring
        add, mul, isz = R._add, R._mul, R._is_zero
        out = []
        for row in self._rows:
            acc = [R._zero()] * other.ncols
            for k, a in enumerate(row):
                if isz(a):
                    continue
                for j, b in enumerate(other._rows[k]):
                    if not isz(b):
                        acc[j] = add(acc[j], mul(a, b))
            out.append(acc)
        return Matrix._raw(R, out, other.ncols)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.ring != other.ring or (self.nrows, self.ncols) != (other.nrows, other.ncols):
            return False
        eq = self.ring._eq
        return all(eq(a, b) for r1, r2 in zip(self._rows, other._rows) for a, b in zip(r1, r2))

    __hash__ = None

    def is_diagonal(self) -> bool:
        isz = self.ring._is_zero
        return all(isz(x) for i, row in enumerate(self._rows) for j, x in enumerate(row) if i != j)

    def diagonal(self):
        return [Elem(self.ring, self._rows[i][i]) for i in range(min(self.nrows, self.ncols))]

    def det(self) -> Elem:
        return Elem(self.ring, bird_det_raw(self.ring, self._rows))

    def __repr__(self):
        f = self.ring._format
        body = "; ".join(", ".join(f(x) for x in row) for row in self._rows)
        return f"Matrix({self.ring.describe()}, [{body}])"


def bird_det_raw(R: Ring, rows):
    """Division-free determinant (Bird's iteration), valid over any commutative ring."""
    n = len(rows)
    if n == 0:
        return R._one()
    add, mul, neg, isz = R._add, R._mul, R._neg, R._is_zero
    A = rows
    X = [list(r) for r in A]
    for _ in range(n - 1):
        # mu(X): strictly upper part kept, diagonal replaced by minus trailing traces
        mu = [[R._zero()] * n for _ in range(n)]
        tail = R._zero()
        for i in range(n - 1, -1, -1):
            mu[i][i] = neg(tail)
            tail = add(tail, X[i][i])
            for j in range(i + 1, n):
                mu[i][j] = X[i][j]
        Y = []
        for i in range(n):
            acc = [R._zero()] * n
            for k in range(i, n):
                a = mu[i][k]
                if isz(a):
                    continue
                for j, b in enumerate(A[k]):
                    if not isz(b):
                        acc[j] = add(acc[j], mul(a, b))
            Y.append(acc)
        X = Y
    d = X[0][0]
    return neg(d) if (n - 1) % 2 else d
