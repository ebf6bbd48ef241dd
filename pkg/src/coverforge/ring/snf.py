"""Smith normal form over ZZ and over k[s] (k a field).

The pivot is always the nonzero entry of least Euclidean norm in the active
block (absolute value, resp. degree), ties broken by row then column.
"""

from __future__ import annotations

from coverforge.ring.base import CapabilityError, Elem, IntegerRing, Ring
from coverforge.ring.matrix import Matrix
from coverforge.ring.poly import PolynomialRing


def _check_euclidean(R: Ring):
    if isinstance(R, IntegerRing):
        return
    if isinstance(R, PolynomialRing) and R.nvars == 1 and R.base.is_field:
        return
    raise CapabilityError(f"Smith normal form is not supported over {R}")


class _State:
    def __init__(self, R, rows, ncols, track):
        self.R = R
        self.D = [list(r) for r in rows]
        self.m = len(rows)
        self.n = ncols
        self.track = track
        if track:
            self.U = Matrix.identity(R, self.m).raw_rows()
            self.V = Matrix.identity(R, ncols).raw_rows()

    def swap_rows(self, i, j):
        if i != j:
            self.D[i], self.D[j] = self.D[j], self.D[i]
            if self.track:
                self.U[i], self.U[j] = self.U[j], self.U[i]

    def swap_cols(self, i, j):
        if i != j:
            for row in self.D:
                row[i], row[j] = row[j], row[i]
            if self.track:
                for row in self.V:
                    row[i], row[j] = row[j], row[i]

    def row_axpy(self, dst, q, src):
        """row[dst] -= q * row[src]"""
        R = self.R
        sub, mul = R._sub, R._mul
        self.D[dst] = [sub(a, mul(q, b)) for a, b in zip(self.D[dst], self.D[src])]
        if self.track:
            self.U[dst] = [sub(a, mul(q, b)) for a, b in zip(self.U[dst], self.U[src])]

    def col_axpy(self, dst, q, src):
        R = self.R
        sub, mul = R._sub, R._mul
        for row in self.D:
            row[dst] = sub(row[dst], mul(q, row[src]))
        if self.track:
            for row in self.V:
                row[dst] = sub(row[dst], mul(q, row[src]))

    def scale_row(self, i, u):
        mul = self.R._mul
        self.D[i] = [mul(u, a) for a in self.D[i]]
        if self.track:
            self.U[i] = [mul(u, a) for a in self.U[i]]


def _min_pivot(st: _State, t: int, cells):
    norm = st.R.euclid_norm
    best = None
    for i, j in cells:
        x = st.D[i][j]
        if st.R._is_zero(x):
            continue
        key = (norm(x), i, j)
        if best is None or key < best:
            best = key
    return best


def _snf(R: Ring, rows, ncols: int, track: bool):
    _check_euclidean(R)
    st = _State(R, rows, ncols, track)
    m, n = st.m, st.n
    isz = R._is_zero
    divmod_ = R.euclid_divmod
    t = 0
    while t < min(m, n):
        best = _min_pivot(st, t, ((i, j) for i in range(t, m) for j in range(t, n)))
        if best is None:
            break
        _, pi, pj = best
        st.swap_rows(t, pi)
        st.swap_cols(t, pj)
        while True:
            clean = True
            piv = st.D[t][t]
            for i in range(t + 1, m):
                if not isz(st.D[i][t]):
                    q, r = divmod_(st.D[i][t], piv)
                    st.row_axpy(i, q, t)
                    if not isz(r):
                        clean = False
            for j in range(t + 1, n):
                if not isz(st.D[t][j]):
                    q, r = divmod_(st.D[t][j], piv)
                    st.col_axpy(j, q, t)
                    if not isz(r):
                        clean = False
            if not clean:
                cells = [(i, t) for i in range(t, m)] + [(t, j) for j in range(t + 1, n)]
                _, pi, pj = _min_pivot(st, t, cells)
                st.swap_rows(t, pi)
                st.swap_cols(t, pj)
                continue
            # divisibility of the remaining block by the pivot
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if not isz(st.D[i][j]) and not isz(divmod_(st.D[i][j], piv)[1]):
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            st.row_axpy(t, R._neg(R._one()), bad)
        st.scale_row(t, R.normal_unit(st.D[t][t]))
        t += 1
    return st


def smith_normal_form(M: Matrix):
    """Return ``(D, U, V)`` with ``U*M*V == D`` and ``d_1 | d_2 | ...``."""
    st = _snf(M.ring, M.raw_rows(), M.ncols, True)
    R = M.ring
    return (
        Matrix._raw(R, st.D, M.ncols),
        Matrix._raw(R, st.U, M.nrows),
        Matrix._raw(R, st.V, M.ncols),
    )


def elementary_divisors(M: Matrix) -> list:
    """Nonzero diagonal entries of the Smith form, in order."""
    st = _snf(M.ring, M.raw_rows(), M.ncols, False)
    R = M.ring
    out = []
    for i in range(min(st.m, st.n)):
        if R._is_zero(st.D[i][i]):
            break
        out.append(Elem(R, st.D[i][i]))
    return out


def left_kernel_rows(M: Matrix):
    """Rows ``y`` of the transform ``U`` with ``y*M == 0`` (a basis of the left kernel)."""
    D, U, _ = smith_normal_form(M)
    R = M.ring
    rank = sum(1 for i in range(min(D.nrows, D.ncols)) if not R._is_zero(D._rows[i][i]))
    return [U.tolist()[i] for i in range(rank, M.nrows)]


def solve_integer(rows, rhs):
    """An integer solution of ``rows @ x == rhs`` or ``None`` (exact, via SNF)."""
    from coverforge.ring.base import ZZ

    ncols = len(rows[0]) if rows else 0
    if not rows:
        return [0] * ncols
    st = _snf(ZZ, rows, ncols, True)
    # D y = U b, x = V y
    b = [sum(u * bi for u, bi in zip(urow, rhs)) for urow in st.U]
    y = [0] * ncols
    for i in range(len(rows)):
        d = st.D[i][i] if i < ncols else 0
        if d == 0:
            if b[i] != 0:
                return None
            continue
        q, r = divmod(b[i], d)
        if r:
            return None
        y[i] = q
    return [sum(v * yj for v, yj in zip(vrow, y)) for vrow in st.V]
