"""Low-degree pieces of the colon ideal a : b and a zero-dimensionality certificate.

(a : b)_k = {h in R_k : h q in a for every generator q of b}.  With a Groebner
basis of a complete up to degree k + e (e the largest degree of the q), this is
exact linear algebra on normal forms: h ranges over the left kernel of the
stacked normal-form matrices of m q for all monomials m of degree k.

Every element of a : b vanishes on V(a) outside V(b), so known points there
cut the search down to the degree-k forms vanishing on them; the result is
still all of (a : b)_k.  The kernel is located with a random projection and
then verified exactly against every normal-form matrix, so a kernel element
that survives is a true element of a : b regardless of the projection.

If J = a + (a : b)_k has a one-dimensional (affine) quotient, V(a : b), being a
subset of V(J), is finite.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .groebner.f4 import GradedBasis, Reducer, groebner_basis
from .groebner.hilbert import HilbertData, hilbert_data
from .polyring.fields import rref_mod_p
from .polyring.graded import MonomialIndex

log = logging.getLogger(__name__)


def vanishing_forms(points: np.ndarray, k: int, p: int, index: MonomialIndex) -> np.ndarray:
    """Rows: coefficient vectors (on the degree-k monomials) of a basis of forms vanishing at the points."""
    E = index.table(k).astype(np.int64)
    P = np.asarray(points, dtype=np.int64) % p
    V = np.ones((len(P), len(E)), dtype=np.int64)
    for j in range(E.shape[1]):
        for t in range(int(E[:, j].max(initial=0))):
            V = np.where(E[None, :, j] > t, V * P[:, j:j + 1] % p, V)
    if len(P) == 0:
        return np.eye(len(E), dtype=np.int64)
    return _left_kernel(V.T, p)


def _normal_form_matrix(red: Reducer, index: MonomialIndex, q, C: np.ndarray, k: int, p: int) -> sp.csr_matrix:
    """Rows: NF(h q) for the degree-k forms h given by the rows of C."""
    exps, coefs = q
    exps = np.asarray(exps, dtype=np.int64)
    coefs = np.asarray(coefs, dtype=np.int64) % p
    M = index.table(k).astype(np.int64)
    rows = []
    for row in C:
        nz = np.nonzero(row)[0]
        e = (exps[None, :, :] + M[nz][:, None, :]).reshape(-1, exps.shape[1])
        c = (row[nz][:, None] * coefs[None, :] % p).ravel()
        rows.append((index.ranks(e), c))
    data, cols, ptr = [], [], [0]
    for c, v in red.normal_forms(rows):
        cols.append(c)
        data.append(v)
        ptr.append(ptr[-1] + len(c))
    return sp.csr_matrix((np.concatenate(data) if data else np.zeros(0, np.int64),
                          np.concatenate(cols) if cols else np.zeros(0, np.int64), np.array(ptr)),
                         shape=(len(C), red.ncols))


def _left_kernel(P: np.ndarray, p: int) -> np.ndarray:
    """Basis (rows) of {h : h P = 0 mod p}."""
    R, piv = rref_mod_p(P.T % p, p)
    n = P.shape[0]
    free = [j for j in range(n) if j not in set(piv)]
    K = np.zeros((len(free), n), dtype=np.int64)
    for r, j in enumerate(free):
        K[r, j] = 1
        for i, c in enumerate(piv):
            K[r, c] = (-R[i, j]) % p
    return K


@dataclass
class ColonPiece:
    degree: int
    polys: list  # (exps, coefs) elements of (a : b)_k, a basis
    verified: bool


def colon_piece(basis: GradedBasis, others, k: int, points=None, seed: int = 0,
                width: int | None = None) -> ColonPiece:
    """(a : (others))_k for a basis of a complete at least up to degree k + max deg(others).

    points, if given, must lie in V(a) outside V(others); they restrict the search space.
    """
    p = basis.p
    n = basis.n
    e = max(int(np.asarray(q[0])[0].sum()) for q in others)
    d = k + e
    if not basis.complete and (basis.maxdeg is None or basis.maxdeg < d):
        raise ValueError(f"basis must be complete up to degree {d}")
    index = MonomialIndex(n, d + 1)
    red = Reducer(basis, d, index)
    C = vanishing_forms(np.zeros((0, n)) if points is None else points, k, p, index)
    size = len(C)
    width = width or size + 20
    rng = np.random.default_rng(seed)
    mats = []
    proj = np.zeros((size, width), dtype=np.int64)
    for q in others:
        N = _normal_form_matrix(red, index, q, C, k, p)
        mats.append(N)
        used = np.unique(N.indices)
        if len(used):
            R = rng.integers(0, p, (len(used), width))
            sub = N[:, used]
            proj = (proj + (sub @ R) % p) % p
    K = _left_kernel(proj, p) if size else np.zeros((0, 0), dtype=np.int64)
    ok = all(not ((sp.csr_matrix(K) @ N).toarray() % p).any() for N in mats) if len(K) else True
    E = index.table(k)
    polys = []
    for row in (K @ C) % p if len(K) else []:
        nz = np.nonzero(row)[0]
        polys.append((E[nz].copy(), row[nz].copy()))
    log.info("colon piece in degree %d: dimension %d", k, len(polys))
    return ColonPiece(k, polys, ok)


@dataclass
class ColonCertificate:
    piece: ColonPiece
    hilbert: HilbertData  # of R / (a + piece)

    @property
    def zero_dimensional(self) -> bool:
        return self.piece.verified and self.hilbert.dim <= 1

    @property
    def degree_bound(self) -> int:
        return self.hilbert.degree


def certify_zero_dimensional(basis: GradedBasis, a_gens, others, k: int = 2, points=None,
                             seed: int = 0) -> ColonCertificate:
    piece = colon_piece(basis, others, k, points, seed)
    G = groebner_basis(list(a_gens) + piece.polys, basis.n, basis.p)
    return ColonCertificate(piece, hilbert_data(G.leading_exponents, basis.n))
