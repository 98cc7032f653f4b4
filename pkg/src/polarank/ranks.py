"""Exact rank over GF(p): the brute-force oracle behind every formula check.

The kernel keeps a Gauss-Jordan-reduced row basis packed one residue per byte
lane (eight per 64-bit word through numpy's vector ops), with reduction mod p
delayed until a lane could overflow.  Because every basis row is zero at all
pivot columns except its own, an incoming row is reduced in a single pass
over the pivot columns where it is nonzero; for sparse 0/1 incidence rows
that is at most nnz(row) vector operations, which is what makes the
20440 x 20440 case tractable.  Memory is (current rank) x cols lanes.

Pivoting is first-nonzero, so results are deterministic.
"""

from __future__ import annotations

import numpy as np

from .errors import RangeError
from .gf import is_prime


class DenseRowPacked:
    """A growable Gauss-Jordan row basis over GF(p), byte-lane packed."""

    def __init__(self, cols: int, p: int, capacity: int = 64):
        if not is_prime(p):
            raise RangeError(f"modulus {p} is not prime")
        self.p = p
        self.cols = cols
        # a reduced lane is <= p-1; one unreduced add contributes (p-1)^2
        if (p - 1) + (p - 1) ** 2 <= 255:
            self.dtype = np.uint8
        else:
            self.dtype = np.uint16
        lane_max = np.iinfo(self.dtype).max
        self._adds_budget = max(1, (lane_max - (p - 1)) // max(1, (p - 1) ** 2))
        self._rows = np.zeros((capacity, cols), dtype=self.dtype)
        self._pivot_cols: list[int] = []
        self._pivot_arr = np.zeros(capacity, dtype=np.int64)
        self._inv = [0] + [pow(i, p - 2, p) for i in range(1, p)]

    @property
    def rank(self) -> int:
        return len(self._pivot_cols)

    @property
    def pivot_cols(self) -> tuple:
        return tuple(self._pivot_cols)

    def _grow(self):
        cap = self._rows.shape[0]
        new = np.zeros((cap * 2, self.cols), dtype=self.dtype)
        new[:cap] = self._rows
        self._rows = new
        piv = np.zeros(cap * 2, dtype=np.int64)
        piv[:cap] = self._pivot_arr
        self._pivot_arr = piv

    def coerce_row(self, row) -> np.ndarray:
        a = np.asarray(row)
        if a.ndim != 1 or a.shape[0] != self.cols:
            raise RangeError(f"row must have length {self.cols}")
        if a.dtype == self.dtype and a.max(initial=0) < self.p:
            return a.astype(self.dtype, copy=True)
        return np.mod(a.astype(np.int64), self.p).astype(self.dtype)

    def insert(self, row) -> bool:
        """Reduce a row against the basis; insert if independent.

        Returns True when the rank grew.
        """
        p = self.p
        row = self.coerce_row(row)
        r = self.rank
        if r:
            coeffs = row[self._pivot_arr[:r]]
            nz = np.flatnonzero(coeffs)
            if nz.size:
                budget = self._adds_budget
                for k in nz.tolist():
                    row += self._rows[k] * self.dtype(p - int(coeffs[k]))
                    budget -= 1
                    if budget == 0:
                        row %= p
                        budget = self._adds_budget
                row %= p
        nz_row = np.flatnonzero(row)
        if nz_row.size == 0:
            return False
        c = int(nz_row[0])
        lead = int(row[c])
        if lead != 1:
            row = (row * self.dtype(self._inv[lead])) % p
        if r:
            col = self._rows[:r, c]
            hit = np.flatnonzero(col)
            if hit.size:
                upd = np.outer(self.dtype(p) - col[hit], row)
                self._rows[hit] = (self._rows[hit] + upd) % p
        if r == self._rows.shape[0]:
            self._grow()
        self._rows[r] = row
        self._pivot_arr[r] = c
        self._pivot_cols.append(c)
        return True


def _iter_dense_rows(mat):
    """Yield dense rows from a SparseIncidenceMatrix, ndarray, or nested lists."""
    row_data = getattr(mat, "row_data", None)
    if row_data is not None:
        cols = mat.cols
        for idx in row_data:
            row = np.zeros(cols, dtype=np.uint8)
            if idx:
                row[list(idx)] = 1
            yield row
        return
    arr = np.asarray(mat)
    if arr.ndim != 2:
        raise RangeError("expected a 2-D matrix")
    yield from arr


def rank_mod_p(mat, p: int = None) -> int:
    """Rank over GF(p) of an incidence matrix or any integer matrix.

    For a SparseIncidenceMatrix the modulus is taken from the matrix itself.
    """
    if p is None:
        p = getattr(mat, "modulus", None)
        if p is None:
            raise RangeError("p required for plain arrays")
    cols = mat.cols if hasattr(mat, "cols") else np.asarray(mat).shape[1]
    acc = DenseRowPacked(int(cols), int(p))
    for row in _iter_dense_rows(mat):
        acc.insert(row)
    return acc.rank


def rank_streaming(row_source, cols: int, p: int) -> int:
    """Rank of rows supplied one at a time; memory is rank x cols lanes.

    Each row is either a dense length-`cols` array-like of residues or, when
    `cols` would be ambiguous, anything np.asarray turns into one.
    """
    acc = DenseRowPacked(int(cols), int(p))
    for row in row_source:
        acc.insert(row)
    return acc.rank
