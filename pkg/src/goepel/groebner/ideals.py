"""Homogeneous ideals over F_p: Hilbert data, linear changes of coordinates,
zero-dimensional slices, eliminants and Jacobian ranks at points."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ..polyring import univariate as U
from ..polyring.fields import QQ, ExtensionField, rref, rref_mod_p
from ..polyring.graded import MonomialIndex, substitution_matrix
from .f4 import F4, GradedBasis, Reducer, sort_poly
from .hilbert import HilbertData, hilbert_data

log = logging.getLogger(__name__)


def to_dense(poly, index: MonomialIndex, p: int) -> tuple[int, np.ndarray]:
    exps, coefs = poly
    d = int(np.asarray(exps[0]).sum())
    v = np.zeros(index.size(d), dtype=np.int64)
    np.add.at(v, index.ranks(np.asarray(exps, dtype=np.int64)), np.asarray(coefs, dtype=np.int64))
    return d, v % p


def from_dense(v: np.ndarray, d: int, index: MonomialIndex):
    nz = np.nonzero(v)[0]
    return index.table(d)[nz].copy(), v[nz].astype(np.int64)


@dataclass
class HomogeneousIdeal:
    """Ideal generated by homogeneous (exps, coefs) polynomials in n variables over F_p."""

    gens: list
    n: int
    p: int
    _gb: GradedBasis | None = field(default=None, repr=False)

    def __post_init__(self):
        self.gens = [(np.asarray(e, dtype=np.int8), np.asarray(c, dtype=np.int64) % self.p)
                     for e, c in self.gens]

    @property
    def degrees(self) -> list[int]:
        return [int(e[0].sum()) for e, _ in self.gens]

    def groebner(self, maxdeg: int | None = None) -> GradedBasis:
        if self._gb is None or (not self._gb.complete and (maxdeg is None or maxdeg > self._gb.maxdeg)):
            top = maxdeg if maxdeg is not None else 40
            self._gb = F4(self.n, self.p, maxdeg=top + 2).run(self.gens, maxdeg)
        return self._gb

    def hilbert(self) -> HilbertData:
        G = self.groebner()
        if not G.complete:
            raise RuntimeError("Hilbert series needs a complete basis")
        return hilbert_data(G.leading_exponents, self.n)

    def normal_forms(self, polys, basis: GradedBasis | None = None) -> list:
        """Normal forms of homogeneous polynomials (all of one degree d)."""
        G = basis or self.groebner()
        d = int(np.asarray(polys[0][0][0]).sum())
        index = MonomialIndex(self.n, d + 1)
        red = Reducer(G, d, index)
        rows = [(index.ranks(np.asarray(e, dtype=np.int64)), np.asarray(c, dtype=np.int64) % self.p)
                for e, c in polys]
        return [(index.table(d)[c], f) for c, f in red.normal_forms(rows)]

    def contains(self, poly, basis: GradedBasis | None = None) -> bool:
        G = basis or self.groebner(int(np.asarray(poly[0][0]).sum()))
        return len(self.normal_forms([poly], G)[0][1]) == 0

    def evaluate(self, point) -> list[int]:
        return [evaluate_mod_p(g, point, self.p) for g in self.gens]


def evaluate_mod_p(poly, point, p: int) -> int:
    exps, coefs = poly
    x = np.asarray(point, dtype=np.int64) % p
    total = 0
    for e, c in zip(np.asarray(exps, dtype=np.int64), coefs):
        t = int(c) % p
        for xi, k in zip(x, e):
            if k:
                t = t * pow(int(xi), int(k), p) % p
        total += t
    return total % p


# linear coordinate changes


@dataclass(frozen=True)
class CoordinateChange:
    """z = T y with T unimodular; y = A z.  The first rows of T come from given linear forms."""

    T: np.ndarray
    A: np.ndarray


def complete_to_unimodular(forms: list[dict[int, int]], n: int) -> CoordinateChange:
    """New coordinates: the given forms (1-based variable -> coefficient) become the last
    len(forms) coordinates; the remaining ones are the variables not used as pivots.

    Each form must have coefficient 1 at a variable not used by later forms as pivot;
    we pick, for form k, its largest-index variable with coefficient 1 as pivot.
    """
    T = np.zeros((n, n), dtype=np.int64)
    pivots = []
    for f in forms:
        pv = max(v for v, c in f.items() if c == 1 and v - 1 not in pivots) - 1
        pivots.append(pv)
    rest = [i for i in range(n) if i not in pivots]
    for k, i in enumerate(rest):
        T[k, i] = 1
    for k, f in enumerate(forms):
        for v, c in f.items():
            T[len(rest) + k, v - 1] = c
    ech, piv = rref(T.tolist(), QQ)
    if len(piv) != n:
        raise ValueError("forms are not independent")
    # exact inverse over Q, must be integral
    aug = [list(T[i]) + [int(i == j) for j in range(n)] for i in range(n)]
    ech, _ = rref(aug, QQ)
    A = [[Fraction(x) for x in row[n:]] for row in ech]
    if any(x.denominator != 1 for row in A for x in row):
        raise ValueError("coordinate change is not unimodular")
    return CoordinateChange(T, np.array([[int(x) for x in row] for row in A], dtype=np.int64))


def substitute(gens, A: np.ndarray, p: int, n: int) -> list:
    """Images of the generators under y -> A z (as polynomials in z)."""
    degs = sorted({int(np.asarray(e[0]).sum()) for e, _ in gens})
    index = MonomialIndex(n, max(degs) + 1)
    S = {d: substitution_matrix(index, A, d, p) for d in degs}
    out = []
    for g in gens:
        d, v = to_dense(g, index, p)
        out.append(from_dense(S[d] @ v % p, d, index))
    return out


def restrict(gens, keep: list[int]) -> list:
    """Set all variables outside keep to zero; returns polynomials in the kept variables."""
    out = []
    for exps, coefs in gens:
        exps = np.asarray(exps)
        drop = [i for i in range(exps.shape[1]) if i not in keep]
        mask = np.all(exps[:, drop] == 0, axis=1) if drop else np.ones(len(exps), bool)
        if mask.any():
            out.append((exps[mask][:, keep], np.asarray(coefs)[mask]))
    return out


# zero-dimensional slices


@dataclass
class ZeroDimensionalSlice:
    """A one-dimensional homogeneous ideal J (finitely many projective points) with a basis.

    The chart variable must be a non-zero-divisor on R/J in high degree; points
    are read in the affine chart where it equals 1.
    """

    basis: GradedBasis
    chart: int
    hilbert: HilbertData

    @property
    def degree(self) -> int:
        return self.hilbert.degree

    def stable_degree(self) -> int:
        return max(len(self.hilbert.h), int(self.basis.degrees().max(initial=0))) + 1

    def multiplication_matrices(self, forms, d: int | None = None) -> list[np.ndarray]:
        """Matrices of multiplication by sum_v form[v] x_v / x_chart on R_d/J_d, one per form.

        Columns and rows are indexed by the standard monomials of degree d.
        """
        G = self.basis
        p = G.p
        d = d or self.stable_degree()
        index = MonomialIndex(G.n, d + 1)
        red = Reducer(G, d, index)
        std = red.standard_columns
        if len(std) != self.degree:
            raise RuntimeError("Hilbert function has not stabilized at this degree")
        E = index.table(d).astype(np.int64)
        pos = np.full(len(E), -1, dtype=np.int64)
        pos[std] = np.arange(len(std))
        out = []
        for form in forms:
            form = np.asarray(form, dtype=np.int64) % p
            keep = np.nonzero(form)[0]
            rows = []
            for c in std:
                e = E[c]
                if e[self.chart] < 1:
                    raise RuntimeError("standard monomial not divisible by the chart variable")
                ex = np.repeat(e[None, :], len(keep), axis=0)
                ex[:, self.chart] -= 1
                ex[np.arange(len(keep)), keep] += 1
                rows.append((index.ranks(ex), form[keep]))
            M = np.zeros((len(std), len(std)), dtype=np.int64)
            for i, (cols, vals) in enumerate(red.normal_forms(rows)):
                M[pos[cols], i] = vals
            out.append(M)
        return out


def krylov_minimal_polynomial(M: np.ndarray, p: int, rng=None, v=None) -> tuple[np.ndarray, np.ndarray]:
    """Minimal polynomial of the vector v under M (low->high), and the Krylov matrix."""
    rng = rng or np.random.default_rng(0)
    N = len(M)
    v = rng.integers(0, p, N) if v is None else np.asarray(v) % p
    cols = [v]
    for _ in range(N):
        cols.append(M @ cols[-1] % p)
    K = np.array(cols).T % p
    R, piv = rref_mod_p(K, p)
    r = len(piv)
    if piv != list(range(r)):
        raise RuntimeError("unexpected Krylov pivot pattern")
    # K[:, r] = sum c_i K[:, i]
    c = R[:r, r]
    return U.poly(np.concatenate([(-c) % p, [1]]), p), K[:, :r]


def apply_poly_to_matrix(f, M: np.ndarray, v: np.ndarray, p: int) -> np.ndarray:
    """f(M) v mod p by Horner."""
    out = np.zeros(len(v), dtype=np.int64)
    for c in f[::-1]:
        out = (M @ out + int(c) * v) % p
    return out


def shape_coordinates(M_u: np.ndarray, others: list[np.ndarray], p: int, rng=None):
    """For a cyclic M_u, polynomials h_k with M_k = h_k(M_u), assuming commuting matrices.

    Returns (minimal polynomial of M_u, [h_k]).
    """
    rng = rng or np.random.default_rng(1)
    N = len(M_u)
    f, K = krylov_minimal_polynomial(M_u, p, rng)
    if U.degree(f) != N:
        raise RuntimeError("multiplier is not a primitive element")
    v = K[:, 0]
    hs = []
    aug = np.hstack([K, np.array([Mk @ v % p for Mk in others]).T])
    R, piv = rref_mod_p(aug, p)
    if piv[:N] != list(range(N)):
        raise RuntimeError("Krylov matrix is singular")
    for k in range(len(others)):
        hs.append(U.poly(R[:N, N + k], p))
    return f, hs


# Jacobian


def derivative_matrix(gens, n: int, index: MonomialIndex) -> tuple[np.ndarray, int]:
    """Integer matrix D with rows (generator, variable) and columns the monomials of
    degree <= dmax-1 (stacked by degree); J[g, i] = D[g*n + i] . monomial values."""
    dmax = max(int(np.asarray(e[0]).sum()) for e, _ in gens)
    offsets = [0]
    for d in range(dmax):
        offsets.append(offsets[-1] + index.size(d))
    D = np.zeros((len(gens) * n, offsets[-1]), dtype=np.int64)
    for k, (exps, coefs) in enumerate(gens):
        exps = np.asarray(exps, dtype=np.int64)
        for i in range(n):
            mask = exps[:, i] > 0
            if not mask.any():
                continue
            ex = exps[mask].copy()
            ex[:, i] -= 1
            d = int(ex[0].sum())
            np.add.at(D[k * n + i], offsets[d] + index.ranks(ex), np.asarray(coefs)[mask] * exps[mask, i])
    return D, dmax


def monomial_values_ext(point: list, dmax: int, index: MonomialIndex, field: ExtensionField) -> np.ndarray:
    """Values of all monomials of degree < dmax at point, as coefficient rows over F_p."""
    n = len(point)
    rows = []
    prev = {0: field.one()}
    rows.append(field.one().c)
    for d in range(1, dmax):
        E = index.table(d).astype(np.int64)
        cur = {}
        for r, e in enumerate(E):
            v = int(np.nonzero(e)[0][0])
            e2 = e.copy()
            e2[v] -= 1
            cur[r] = prev[index.rank(e2)] * point[v]
        rows += [cur[r].c for r in range(len(E))]
        prev = cur
    k = field.k
    out = np.zeros((len(rows), k), dtype=np.int64)
    for i, c in enumerate(rows):
        out[i, : len(c)] = c
    return out


def jacobian_rank(gens, n: int, point: list, field: ExtensionField) -> int:
    """Rank over the extension field of the Jacobian matrix of gens at point."""
    from ..polyring.fields import rank
    index = MonomialIndex(n, 8)
    D, dmax = derivative_matrix(gens, n, index)
    V = monomial_values_ext(point, dmax, index, field)
    p = field.p
    # exact: entries < p, sum length <= columns of D
    J = np.zeros((len(D), field.k), dtype=np.int64)
    Dm = D % p
    for s in range(0, V.shape[0], 256):
        J = (J + Dm[:, s:s + 256] @ V[s:s + 256]) % p
    entries = [[field(J[k * n + i]) for i in range(n)] for k in range(len(gens))]
    return rank(entries, field)
