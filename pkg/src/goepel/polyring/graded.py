"""Dense indexing of the monomials of one degree in grevlex order.

Rank 0 is the grevlex-largest monomial x_1^d; ranks grow toward smaller
monomials.  The compiled helpers are shared with the F4 engine.
"""
from __future__ import annotations

from math import comb

import numba as nb
import numpy as np


@nb.njit(cache=True)
def rank_of(e, B):
    n = e.shape[0]
    rem = 0
    for k in range(n):
        rem += e[k]
    r = 0
    for k in range(n - 1, 0, -1):
        a = e[k]
        for t in range(a):
            r += B[k, rem - t]
        rem -= a
    return r


@nb.njit(cache=True)
def ranks_of(E, B):
    out = np.empty(E.shape[0], dtype=np.int64)
    e = np.empty(E.shape[1], dtype=np.int64)
    for i in range(E.shape[0]):
        for k in range(E.shape[1]):
            e[k] = E[i, k]
        out[i] = rank_of(e, B)
    return out


def _table(n: int, d: int) -> np.ndarray:
    if n == 1:
        return np.array([[d]], dtype=np.int8)
    blocks = []
    for a in range(d + 1):
        sub = _table(n - 1, d - a)
        col = np.full((sub.shape[0], 1), a, dtype=np.int8)
        blocks.append(np.hstack([sub, col]))
    return np.vstack(blocks)


class MonomialIndex:
    """Monomials of degree <= maxdeg in n variables, one grevlex-ordered table per degree."""

    def __init__(self, n: int, maxdeg: int = 32):
        self.n = n
        self.maxdeg = maxdeg
        B = np.zeros((n + 1, maxdeg + 2), dtype=np.int64)
        for k in range(n + 1):
            for d in range(maxdeg + 2):
                B[k, d] = comb(k + d - 1, d) if k > 0 else int(d == 0)
        self.B = B
        self._tables: dict[int, np.ndarray] = {}

    def size(self, d: int) -> int:
        return int(self.B[self.n, d])

    def table(self, d: int) -> np.ndarray:
        if d not in self._tables:
            if d > self.maxdeg:
                raise ValueError("degree beyond index range")
            self._tables[d] = _table(self.n, d)
        return self._tables[d]

    def rank(self, e) -> int:
        return int(rank_of(np.asarray(e, dtype=np.int64), self.B))

    def ranks(self, E) -> np.ndarray:
        return ranks_of(np.asarray(E, dtype=np.int64), self.B)

    def multiplication_map(self, d: int, i: int) -> np.ndarray:
        """ranks in degree d+1 of x_i times each degree-d monomial."""
        E = self.table(d).astype(np.int64)
        E[:, i] += 1
        return self.ranks(E)


def substitution_matrix(index: MonomialIndex, A: np.ndarray, d: int, p: int) -> np.ndarray:
    """Matrix of f(x) -> f(A x) on degree-d forms mod p (columns = source monomials)."""
    n = index.n
    A = np.asarray(A, dtype=np.int64) % p
    if d == 0:
        return np.ones((1, 1), dtype=np.int64)
    prev = substitution_matrix(index, A, d - 1, p)
    E = index.table(d).astype(np.int64)
    N = len(E)
    mul = [index.multiplication_map(d - 1, i) for i in range(n)]
    S = np.zeros((N, N), dtype=np.int64)
    for m in range(N):
        e = E[m].copy()
        v = int(np.nonzero(e)[0][0])
        e[v] -= 1
        col = prev[:, index.rank(e)]
        out = np.zeros(N, dtype=np.int64)
        for i in range(n):
            if A[v, i]:
                np.add.at(out, mul[i], A[v, i] * col)
        S[:, m] = out % p
    return S
