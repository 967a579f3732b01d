"""Row spaces of integer matrices mod p and over Q.

Reductions against a reduced echelon basis are done as one matrix product
in float64, which is exact while p^2 * (number of pivots) < 2^53.
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm

import numpy as np

from .fields import QQ, rref


def _matmul_mod(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    if A.shape[1] == 0:
        return np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    if p * p * A.shape[1] >= 2 ** 53:
        raise ValueError("prime too large for exact float products")
    return np.rint(np.mod(A.astype(np.float64) @ B.astype(np.float64), p)).astype(np.int64) % p


class EchelonModP:
    """Reduced row echelon basis over F_p grown one row at a time."""

    def __init__(self, ncols: int, p: int):
        self.p = p
        self.ncols = ncols
        self.rows = np.zeros((0, ncols), dtype=np.int64)
        self.pivots: list[int] = []

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, R: np.ndarray) -> np.ndarray:
        R = np.atleast_2d(np.asarray(R, dtype=np.int64)) % self.p
        if not self.pivots:
            return R
        return (R - _matmul_mod(R[:, self.pivots], self.rows, self.p)) % self.p

    def _insert(self, r: np.ndarray) -> None:
        p = self.p
        c = int(np.nonzero(r)[0][0])
        r = r * pow(int(r[c]), p - 2, p) % p
        if len(self.rows):
            f = self.rows[:, c].copy()
            self.rows = (self.rows - np.outer(f, r)) % p
        order = np.searchsorted(self.pivots, c)
        self.rows = np.insert(self.rows, order, r, axis=0)
        self.pivots.insert(int(order), c)

    def add_rows(self, R, chunk: int = 2048, stop_at: int | None = None) -> list[int]:
        """Insert rows greedily in order; returns the positions of rows that raised the rank."""
        R = np.asarray(R, dtype=np.int64)
        taken = []
        start = 0
        while start < len(R):
            block = self.reduce(R[start:start + chunk])
            nz = np.nonzero(block.any(axis=1))[0]
            if len(nz) == 0:
                start += chunk
                continue
            k = int(nz[0])
            self._insert(block[k])
            taken.append(start + k)
            if stop_at is not None and self.rank >= stop_at:
                break
            start += k + 1
        return taken


def greedy_independent(R, p: int, base=None, chunk: int = 2048) -> tuple[list[int], EchelonModP]:
    """Indices of the first maximal F_p-independent subset of R modulo the span of base."""
    R = np.asarray(R, dtype=np.int64)
    E = EchelonModP(R.shape[1], p)
    if base is not None and len(base):
        E.add_rows(base, chunk)
    return E.add_rows(R, chunk), E


def rank_mod_p_fast(R, p: int) -> int:
    return greedy_independent(R, p)[1].rank


def rational_span_certificate(R, chosen: list[int]) -> bool:
    """True if every row of the integer matrix R is a Q-combination of the rows `chosen`."""
    R = np.asarray(R, dtype=object)
    ech, piv = rref([list(R[i]) for i in chosen], QQ)
    if len(piv) != len(chosen):
        return False
    den = 1
    for row in ech:
        for x in row:
            den = lcm(den, Fraction(x).denominator)
    E = np.array([[int(Fraction(x) * den) for x in row] for row in ech], dtype=object)
    lhs = R * den
    rhs = R[:, piv].dot(E)
    return bool(np.all(lhs == rhs))


def rank_over_rationals(R, p: int = 1_000_003) -> int:
    """Exact rank of an integer matrix: independence mod p plus a Q spanning certificate."""
    taken, _ = greedy_independent(R, p)
    if not rational_span_certificate(R, taken):
        raise ArithmeticError("rank mod p is smaller than the rational rank; try another prime")
    return len(taken)
