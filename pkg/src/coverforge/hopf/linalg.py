"""Row spaces over F_p backed by numpy integer arrays."""

from __future__ import annotations

import numpy as np


def as_vec(v, p: int) -> np.ndarray:
    return np.asarray(v, dtype=np.int64) % p


class RowSpace:
    """An incrementally built subspace of ``F_p^n`` kept in echelon form.

    Every stored row has a pivot entry 1 and zeros in the pivot columns of all
    other stored rows, so ``reduce`` returns a canonical representative of a
    coset.
    """

    def __init__(self, p: int, n: int, rows=()):
        self.p = p
        self.n = n
        self._rows: list[np.ndarray] = []
        self._pivots: list[int] = []
        for r in rows:
            self.add(r)

    def __len__(self):
        return len(self._rows)

    @property
    def dim(self) -> int:
        return len(self._rows)

    def reduce(self, v) -> np.ndarray:
        p = self.p
        v = as_vec(v, p).copy()
        for row, piv in zip(self._rows, self._pivots):
            c = v[piv]
            if c:
                v = (v - c * row) % p
        return v

    def add(self, v) -> bool:
        """Insert ``v``; return True if the dimension grew."""
        r = self.reduce(v)
        nz = np.flatnonzero(r)
        if nz.size == 0:
            return False
        piv = int(nz[0])
        r = (r * pow(int(r[piv]), -1, self.p)) % self.p
        # keep other rows reduced at the new pivot
        for k, row in enumerate(self._rows):
            c = row[piv]
            if c:
                self._rows[k] = (row - c * r) % self.p
        self._rows.append(r)
        self._pivots.append(piv)
        return True

    def add_reduced_nonzero(self, v) -> np.ndarray | None:
        """Like ``add`` but returns the reduced new row (or None)."""
        before = self.dim
        self.add(v)
        return self._rows[-1] if self.dim > before else None

    def contains(self, v) -> bool:
        return not self.reduce(v).any()

    def basis(self) -> np.ndarray:
        """Rows sorted by pivot column (reduced row echelon form)."""
        if not self._rows:
            return np.zeros((0, self.n), dtype=np.int64)
        order = np.argsort(self._pivots, kind="stable")
        return np.array([self._rows[i] for i in order])

    def copy(self) -> RowSpace:
        out = RowSpace(self.p, self.n)
        out._rows = [r.copy() for r in self._rows]
        out._pivots = list(self._pivots)
        return out


def rank_mod_p(rows, p: int) -> int:
    rows = list(rows)
    if not rows:
        return 0
    return RowSpace(p, len(rows[0]), rows).dim


def solve_mod_p(M: np.ndarray, b, p: int):
    """A solution ``x`` of ``x @ M = b`` over F_p, or None."""
    M = np.asarray(M, dtype=np.int64) % p
    k, n = M.shape
    aug = np.concatenate([M, np.eye(k, dtype=np.int64)], axis=1)
    rs = RowSpace(p, n + k)
    for row in aug:
        rs.add(row)
    r = rs.reduce(np.concatenate([as_vec(b, p), np.zeros(k, dtype=np.int64)]))
    if r[:n].any():
        return None
    return (-r[n:]) % p
