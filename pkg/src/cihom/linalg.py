"""Exact dense linear algebra over the coefficient fields.

numpy int64 arithmetic for prime fields (products stay far below 2^63 for
the default modulus) and Fraction rows for the rationals.  Supplies ranks,
reduced row echelon forms, kernel bases and an incremental echelon
accumulator used for greedy basis extension.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .fields import PrimeField, RationalField


class PrimeLinAlg:
    """Row reduction mod p on int64 numpy arrays."""

    def __init__(self, p: int):
        self.p = p

    def array(self, rows):
        if len(rows) == 0:
            return np.zeros((0, 0), dtype=np.int64)
        return np.array(rows, dtype=np.int64) % self.p

    def rref(self, A):
        """Reduced row echelon form; returns (matrix, pivot column list)."""
        A = A.copy() % self.p
        m, n = A.shape
        r = 0
        pivots = []
        for c in range(n):
            if r >= m:
                break
            nz = np.nonzero(A[r:, c])[0]
            if nz.size == 0:
                continue
            t = r + nz[0]
            if t != r:
                A[[r, t]] = A[[t, r]]
            inv = pow(int(A[r, c]), self.p - 2, self.p)
            A[r] = (A[r] * inv) % self.p
            col = A[:, c].copy()
            col[r] = 0
            A = (A - np.outer(col, A[r])) % self.p
            pivots.append(c)
            r += 1
        return A, pivots

    def rank(self, A) -> int:
        if A.shape[0] == 0 or A.shape[1] == 0:
            return 0
        return len(self.rref(A)[1])

    def kernel_basis(self, A):
        """Columns spanning ker(A), as a list of int64 vectors."""
        m, n = A.shape
        if n == 0:
            return []
        if m == 0:
            return [np.eye(n, dtype=np.int64)[:, j] for j in range(n)]
        R, pivots = self.rref(A)
        pivot_set = set(pivots)
        basis = []
        for j in range(n):
            if j in pivot_set:
                continue
            v = np.zeros(n, dtype=np.int64)
            v[j] = 1
            for i, pc in enumerate(pivots):
                v[pc] = (-int(R[i, j])) % self.p
            basis.append(v)
        return basis


class RationalLinAlg:
    """Fraction-based row reduction (exact, used for audit runs)."""

    def array(self, rows):
        return [[Fraction(v) for v in row] for row in rows]

    def rref(self, A):
        A = [list(row) for row in A]
        m = len(A)
        n = len(A[0]) if m else 0
        r = 0
        pivots = []
        for c in range(n):
            if r >= m:
                break
            t = next((i for i in range(r, m) if A[i][c] != 0), None)
            if t is None:
                continue
            A[r], A[t] = A[t], A[r]
            inv = 1 / A[r][c]
            A[r] = [v * inv for v in A[r]]
            for i in range(m):
                if i != r and A[i][c] != 0:
                    f = A[i][c]
                    A[i] = [a - f * b for a, b in zip(A[i], A[r])]
            pivots.append(c)
            r += 1
        return A, pivots

    def rank(self, A) -> int:
        if not A or not A[0]:
            return 0
        return len(self.rref(A)[1])

    def kernel_basis(self, A):
        m = len(A)
        n = len(A[0]) if m else 0
        if n == 0:
            return []
        if m == 0:
            return [[Fraction(1) if i == j else Fraction(0) for i in range(n)]
                    for j in range(n)]
        R, pivots = self.rref(A)
        pivot_set = set(pivots)
        basis = []
        for j in range(n):
            if j in pivot_set:
                continue
            v = [Fraction(0)] * n
            v[j] = Fraction(1)
            for i, pc in enumerate(pivots):
                v[pc] = -R[i][j]
            basis.append(v)
        return basis


def linalg_for(field):
    if isinstance(field, PrimeField):
        return PrimeLinAlg(field.p)
    if isinstance(field, RationalField):
        return RationalLinAlg()
    raise TypeError(f"no linear algebra backend for {field!r}")


class EchelonAccumulator:
    """Incremental echelon form for greedy spanning/extension questions.

    ``add(vec)`` reduces the vector against the accumulated pivot rows and
    inserts it when independent, returning whether the rank grew.
    """

    def __init__(self, field, width: int):
        self.field = field
        self.width = width
        self.prime = field.p if isinstance(field, PrimeField) else None
        self.rows = []       # echelon rows
        self.pivot_cols = []

    @property
    def rank(self) -> int:
        return len(self.rows)

    def _reduce(self, vec):
        if self.prime is not None:
            p = self.prime
            v = np.asarray(vec, dtype=np.int64) % p
            for row, c in zip(self.rows, self.pivot_cols):
                f = int(v[c])
                if f:
                    v = (v - f * row) % p
            return v
        v = [Fraction(x) for x in vec]
        for row, c in zip(self.rows, self.pivot_cols):
            f = v[c]
            if f != 0:
                v = [a - f * b for a, b in zip(v, row)]
        return v

    def add(self, vec) -> bool:
        v = self._reduce(vec)
        if self.prime is not None:
            nz = np.nonzero(v)[0]
            if nz.size == 0:
                return False
            c = int(nz[0])
            inv = pow(int(v[c]), self.prime - 2, self.prime)
            self.rows.append((v * inv) % self.prime)
            self.pivot_cols.append(c)
            return True
        c = next((i for i, x in enumerate(v) if x != 0), None)
        if c is None:
            return False
        inv = 1 / v[c]
        self.rows.append([x * inv for x in v])
        self.pivot_cols.append(c)
        return True

    def contains(self, vec) -> bool:
        v = self._reduce(vec)
        if self.prime is not None:
            return not np.any(v)
        return all(x == 0 for x in v)
