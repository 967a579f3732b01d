"""Exhaustive search for points of V(a) outside V(b) with coordinates in {-1, 0, 1}.

The cubic binomials are evaluated through the 135 linear forms Y_G = C y,
filtering the candidate set one binomial at a time.
"""
from __future__ import annotations

import numpy as np

from .relations import BasisSelection, cubic_relations, quartic_relations, select_basis


def projective_points(n: int, start: int, stop: int) -> np.ndarray:
    """Points of {-1,0,1}^n with first nonzero coordinate +1, enumerated by rank.

    Rank r in [0, (3^n - 1)/2) maps to: position k of the leading 1 and the
    ternary digits of the tail.
    """
    out = []
    total = 0
    for k in range(n):
        tail = n - k - 1
        block = 3 ** tail
        lo, hi = max(start - total, 0), min(stop - total, block)
        if lo < hi:
            r = np.arange(lo, hi, dtype=np.int64)
            P = np.zeros((hi - lo, n), dtype=np.int8)
            P[:, k] = 1
            for j in range(tail):
                P[:, n - 1 - j] = (r % 3) - 1
                r //= 3
            out.append(P)
        total += block
    return np.vstack(out) if out else np.zeros((0, n), dtype=np.int8)


def count_projective_points(n: int) -> int:
    return (3 ** n - 1) // 2


def _products(vals: np.ndarray, idx) -> np.ndarray:
    out = vals[:, idx[0]].astype(np.int64)
    for i in idx[1:]:
        out = out * vals[:, i]
    return out


def scan(sel: BasisSelection | None = None, chunk: int = 400_000, limit: int | None = None):
    """Returns (points on V(a), those not on V(b)) as int8 arrays."""
    sel = sel or select_basis(3)
    cub = cubic_relations(3).binomials
    quart = quartic_relations(3).binomials
    n = sel.rank
    C = sel.C.T.astype(np.float32)  # n x groups
    total = count_projective_points(n) if limit is None else min(limit, count_projective_points(n))
    on_a = []
    for s in range(0, total, chunk):
        P = projective_points(n, s, min(s + chunk, total))
        keep = np.arange(len(P))
        vals = np.rint(P.astype(np.float32) @ C).astype(np.int32)
        for A, B in cub:
            v = vals[keep]
            ok = _products(v, A) == _products(v, B)
            keep = keep[ok]
            if not len(keep):
                break
        on_a.append(P[keep])
    on_a = np.vstack(on_a) if on_a else np.zeros((0, n), dtype=np.int8)
    vals = np.rint(on_a.astype(np.float32) @ C).astype(np.int64)
    off_b = np.zeros(len(on_a), dtype=bool)
    for A, B in quart:
        off_b |= _products(vals, A) != _products(vals, B)
    return on_a, on_a[off_b]


def normalize_sign(point) -> tuple[int, ...]:
    """Scale by -1 if needed so that the first nonzero coordinate is +1."""
    v = [int(x) for x in point]
    for x in v:
        if x:
            return tuple(v) if x > 0 else tuple(-y for y in v)
    raise ValueError("zero vector is not a projective point")
