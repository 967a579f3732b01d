"""Certificates that q * Y1...Y15 lies in a for the quartic generators q of b.

A direct normal form in degree 19 is out of reach, so for each quartic we look
for a squarefree monomial m dividing Y1...Y15 with NF(q m) = 0 against a
(truncated) Groebner basis of a; then q * Y1...Y15 = q m * (Y1...Y15 / m) is in a.
The known points of V(a) outside V(b) suggest m: q m must vanish on all of them,
so the variables of m have to hit every point where q does not vanish.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .groebner.f4 import GradedBasis, Reducer
from .polyring.graded import MonomialIndex
from .relations import evaluate_generators


def hitting_sets(points: np.ndarray, nonzero: np.ndarray, max_size: int = 6):
    """Variable sets S (smallest first) such that every selected point has a zero coordinate in S."""
    P = np.asarray(points)[np.asarray(nonzero, dtype=bool)]
    n = np.asarray(points).shape[1]
    zero = P == 0
    for k in range(0, max_size + 1):
        for S in itertools.combinations(range(n), k):
            if (k == 0 and len(P) == 0) or (k > 0 and zero[:, list(S)].any(axis=1).all()):
                yield S


@dataclass
class MembershipCertificate:
    multiplier: tuple[int, ...]  # 0-based variables of m
    degree: int
    normal_form_zero: bool


def multiply_by_monomial(poly, variables) -> tuple[np.ndarray, np.ndarray]:
    exps, coefs = poly
    e = np.asarray(exps, dtype=np.int64).copy()
    for v in variables:
        e[:, v] += 1
    return e, np.asarray(coefs, dtype=np.int64)


def certify_product(quartics, basis: GradedBasis, points, tries: int = 8) -> list[MembershipCertificate]:
    """For each quartic, the first candidate multiplier m with NF(q m) = 0 (or a failed record)."""
    p = basis.p
    n = basis.n
    top = basis.maxdeg if not basis.complete and basis.maxdeg is not None else None
    reducers: dict[int, tuple[Reducer, MonomialIndex]] = {}
    out = []
    for q in quartics:
        vals = np.array([evaluate_generators([q], pt)[0] for pt in points])
        base = int(np.asarray(q[0])[0].sum())
        cert = None
        for k, S in enumerate(hitting_sets(points, vals != 0)):
            d = base + len(S)
            if top is not None and d > top:
                break
            if d not in reducers:
                index = MonomialIndex(n, d + 1)
                reducers[d] = (Reducer(basis, d, index), index)
            red, index = reducers[d]
            e, c = multiply_by_monomial(q, S)
            cols, _ = red.normal_forms([(index.ranks(e), c % p)])[0]
            if len(cols) == 0:
                cert = MembershipCertificate(tuple(S), d, True)
                break
            if k + 1 >= tries:
                break
        out.append(cert or MembershipCertificate((), 0, False))
    return out
