"""F4-style Groebner bases of homogeneous ideals over F_p in grevlex order.

Polynomials are pairs (exps, coefs): exps is an int8 array (terms x n) in
descending grevlex order, coefs the matching residues.  Basis elements are
kept monic.  Each degree is handled as one matrix whose reducer rows m*g are
generated from the current basis and cached up to a memory budget; rows
that no longer fit are regenerated on the fly.
"""
from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field

import numba as nb
import numpy as np
from numba.typed import List

from ..polyring.graded import MonomialIndex, rank_of, ranks_of

log = logging.getLogger(__name__)


@nb.njit(cache=True)
def _mark_reducers(lead_exps, lead_deg, order, tables, d, B, reducer):
    n = lead_exps.shape[1]
    e = np.empty(n, dtype=np.int64)
    for g in order:
        ld = lead_deg[g]
        if ld > d:
            continue
        tab = tables[d - ld]
        for i in range(tab.shape[0]):
            for k in range(n):
                e[k] = lead_exps[g, k] + tab[i, k]
            c = rank_of(e, B)
            if reducer[c] < 0:
                reducer[c] = g


@nb.njit(cache=True)
def _inv(a, p):
    r = 1
    b = p - 2
    a %= p
    while b > 0:
        if b & 1:
            r = r * a % p
        a = a * a % p
        b >>= 1
    return r


@nb.njit(cache=True)
def _reduce_rows(todo_ptr, todo_cols, todo_coefs, reducer, g_ptr, g_exps, g_coefs, E_d, B, ncols, p,
                 cache_ptr, cache_len, cache_cols, cache_coefs, fill,
                 out_ptr, out_cols, out_coefs, new_pivots):
    """Reduce each todo row by reducer rows (and, if new_pivots, by rows found earlier).

    With new_pivots the surviving rows are made monic and returned as new
    basis candidates; otherwise every row's full normal form is returned.
    Returns (rows written, entries written) or (-1, 0) when out buffers overflow.
    """
    n = g_exps.shape[1]
    acc = np.zeros(ncols, dtype=np.int64)
    pivot_new = -np.ones(ncols, dtype=np.int64)
    e = np.empty(n, dtype=np.int64)
    nout = 0
    pos = 0
    cap = cache_cols.shape[0]
    for r in range(todo_ptr.shape[0] - 1):
        lo = todo_ptr[r]
        hi = todo_ptr[r + 1]
        first = ncols
        last = -1
        for t in range(lo, hi):
            c = todo_cols[t]
            acc[c] += todo_coefs[t]
            if c < first:
                first = c
            if c > last:
                last = c
        lead = -1
        c = first
        while c <= last:
            a = acc[c] % p
            acc[c] = a
            if a == 0:
                c += 1
                continue
            g = reducer[c]
            if g >= 0:
                start = cache_ptr[c]
                if start < 0:
                    glo = g_ptr[g]
                    ghi = g_ptr[g + 1]
                    L = ghi - glo
                    if fill[0] + L <= cap:
                        start = fill[0]
                        for t in range(glo, ghi):
                            for k in range(n):
                                e[k] = g_exps[t, k] + E_d[c, k] - g_exps[glo, k]
                            cache_cols[start + t - glo] = rank_of(e, B)
                            cache_coefs[start + t - glo] = g_coefs[t]
                        cache_ptr[c] = start
                        cache_len[c] = L
                        fill[0] += L
                    else:
                        for t in range(glo, ghi):
                            for k in range(n):
                                e[k] = g_exps[t, k] + E_d[c, k] - g_exps[glo, k]
                            cc = rank_of(e, B)
                            acc[cc] -= a * g_coefs[t]
                            if cc > last:
                                last = cc
                if start >= 0:
                    for t in range(start, start + cache_len[c]):
                        cc = cache_cols[t]
                        acc[cc] -= a * cache_coefs[t]
                        if cc > last:
                            last = cc
                acc[c] = 0
            elif new_pivots:
                q = pivot_new[c]
                if q >= 0:
                    for t in range(out_ptr[q], out_ptr[q + 1]):
                        cc = out_cols[t]
                        acc[cc] -= a * out_coefs[t]
                        if cc > last:
                            last = cc
                    acc[c] = 0
                elif lead < 0:
                    lead = c
            c += 1
        if not new_pivots:
            lead = first
        if lead < 0 or last < 0:
            for cc in range(max(first, 0), last + 1):
                acc[cc] = 0
            if not new_pivots:
                out_ptr[nout + 1] = pos
                nout += 1
            continue
        inv = _inv(acc[lead], p) if new_pivots else 1
        for cc in range(lead, last + 1):
            a2 = acc[cc] % p
            if a2 != 0:
                if pos >= out_cols.shape[0]:
                    return -1, 0
                out_cols[pos] = cc
                out_coefs[pos] = a2 * inv % p
                pos += 1
            acc[cc] = 0
        for cc in range(first, lead):
            acc[cc] = 0
        if new_pivots:
            pivot_new[lead] = nout
        nout += 1
        out_ptr[nout] = pos
    return nout, pos


@dataclass
class GradedBasis:
    """Groebner basis (possibly truncated at maxdeg) of a homogeneous ideal over F_p."""

    n: int
    p: int
    polys: list  # (exps int8, coefs int64), monic, descending grevlex
    complete: bool
    maxdeg: int | None = None
    stats: list = field(default_factory=list)

    @property
    def leading_exponents(self) -> np.ndarray:
        if not self.polys:
            return np.zeros((0, self.n), dtype=np.int64)
        return np.array([g[0][0] for g in self.polys], dtype=np.int64)

    def degrees(self) -> np.ndarray:
        return self.leading_exponents.sum(axis=1)

    def __len__(self):
        return len(self.polys)


class Reducer:
    """Normal forms in a fixed degree with respect to a graded basis."""

    def __init__(self, basis: GradedBasis, d: int, index: MonomialIndex | None = None,
                 cache_entries: int = 60_000_000):
        self.basis = basis
        self.d = d
        self.index = index or MonomialIndex(basis.n, max(d, 1) + 1)
        ix = self.index
        self.E = ix.table(d)
        self.ncols = len(self.E)
        G = basis.polys
        lead = basis.leading_exponents
        lens = np.array([len(g[1]) for g in G], dtype=np.int64)
        order = np.argsort(lens, kind="stable")
        tables = List()
        for k in range(d + 1):
            tables.append(ix.table(k))
        self.reducer = -np.ones(self.ncols, dtype=np.int64)
        if len(G):
            _mark_reducers(lead, lead.sum(axis=1), order, tables, d, ix.B, self.reducer)
        self.g_ptr = np.zeros(len(G) + 1, dtype=np.int64)
        self.g_ptr[1:] = np.cumsum(lens)
        self.g_exps = np.vstack([g[0] for g in G]) if G else np.zeros((1, basis.n), np.int8)
        self.g_coefs = (np.concatenate([g[1] for g in G]) if G else np.zeros(1)).astype(np.int64)
        self.cache_ptr = -np.ones(self.ncols, dtype=np.int64)
        self.cache_len = np.zeros(self.ncols, dtype=np.int64)
        self.cache_cols = np.empty(cache_entries, dtype=np.int32)
        self.cache_coefs = np.empty(cache_entries, dtype=np.int32)
        self.fill = np.zeros(1, dtype=np.int64)

    @property
    def standard_columns(self) -> np.ndarray:
        return np.nonzero(self.reducer < 0)[0]

    def run(self, rows, new_pivots: bool, out_cap: int | None = None):
        """rows: list of (cols, coefs).  Returns list of (cols, coefs) results."""
        ptr = np.zeros(len(rows) + 1, dtype=np.int64)
        for i, (c, _) in enumerate(rows):
            ptr[i + 1] = ptr[i] + len(c)
        cols = np.concatenate([r[0] for r in rows]).astype(np.int64) if rows else np.zeros(0, np.int64)
        coefs = np.concatenate([r[1] for r in rows]).astype(np.int64) if rows else np.zeros(0, np.int64)
        cap = out_cap or max(1_000_000, 4 * len(cols))
        while True:
            out_ptr = np.zeros(len(rows) + 1, dtype=np.int64)
            out_cols = np.empty(cap, dtype=np.int64)
            out_coefs = np.empty(cap, dtype=np.int64)
            nout, _ = _reduce_rows(ptr, cols, coefs % self.basis.p, self.reducer, self.g_ptr, self.g_exps,
                                   self.g_coefs, self.E, self.index.B, self.ncols, self.basis.p,
                                   self.cache_ptr, self.cache_len, self.cache_cols, self.cache_coefs,
                                   self.fill, out_ptr, out_cols, out_coefs, new_pivots)
            if nout >= 0:
                break
            cap *= 4
        return [(out_cols[out_ptr[i]:out_ptr[i + 1]].copy(), out_coefs[out_ptr[i]:out_ptr[i + 1]].copy())
                for i in range(nout)]

    def normal_forms(self, rows):
        return self.run(rows, new_pivots=False)

    def normal_form_dense(self, cols, coefs) -> np.ndarray:
        c, f = self.normal_forms([(cols, coefs)])[0]
        out = np.zeros(self.ncols, dtype=np.int64)
        out[c] = f
        return out


def sort_poly(exps, coefs, index: MonomialIndex, p: int):
    """Combine like terms, drop zeros and sort terms in descending grevlex order."""
    exps = np.asarray(exps, dtype=np.int64)
    coefs = np.asarray(coefs, dtype=np.int64) % p
    if len(exps) == 0:
        return exps.astype(np.int8), coefs
    r = index.ranks(exps)
    uniq, inv = np.unique(r, return_inverse=True)
    acc = np.zeros(len(uniq), dtype=np.int64)
    np.add.at(acc, inv, coefs)
    acc %= p
    keep = acc != 0
    d = int(exps[0].sum())
    return index.table(d)[uniq[keep]].copy(), acc[keep]


class F4:
    """Groebner basis engine for homogeneous ideals over F_p (grevlex)."""

    def __init__(self, n: int, p: int, maxdeg: int = 30, cache_entries: int = 60_000_000):
        self.n = n
        self.p = p
        self.index = MonomialIndex(n, maxdeg + 2)
        self.cache_entries = cache_entries
        self.G: list = []
        self.lead = np.zeros((0, n), dtype=np.int64)
        self.pairs: list = []
        self.stats: list = []

    # pair bookkeeping

    def _update(self, h: int) -> None:
        L = self.lead
        lh = L[h]
        newpairs = []
        if h:
            lcm = np.maximum(L[:h], lh)
            coprime = np.all(np.minimum(L[:h], lh) == 0, axis=1)
            deg = lcm.sum(axis=1)
            # drop pairs whose lcm is strictly divisible by another new lcm
            div = np.all(lcm[None, :, :] <= lcm[:, None, :], axis=2)
            eq = np.all(lcm[None, :, :] == lcm[:, None, :], axis=2)
            strict = (div & ~eq).any(axis=1)
            classes: dict = {}
            for a in np.nonzero(~strict)[0]:
                key = lcm[a].tobytes()
                if key in classes:
                    first, cp = classes[key]
                    classes[key] = (first, cp or bool(coprime[a]))
                else:
                    classes[key] = (int(a), bool(coprime[a]))
            for first, cp in classes.values():
                if not cp:
                    newpairs.append((int(deg[first]), first, h, tuple(int(x) for x in lcm[first])))
        kept = []
        for pair in self.pairs:
            _, i, j, lc = pair
            lc_a = np.array(lc)
            if np.all(lh <= lc_a):
                if tuple(np.maximum(L[i], lh)) != lc and tuple(np.maximum(L[j], lh)) != lc:
                    continue
            kept.append(pair)
        self.pairs = kept + newpairs

    def _add(self, exps: np.ndarray, coefs: np.ndarray) -> None:
        inv = pow(int(coefs[0]), self.p - 2, self.p)
        self.G.append((exps.astype(np.int8), coefs.astype(np.int64) * inv % self.p))
        self.lead = np.vstack([self.lead, exps[0:1].astype(np.int64)])
        self._update(len(self.G) - 1)

    def _basis(self, complete: bool, maxdeg) -> GradedBasis:
        return GradedBasis(self.n, self.p, list(self.G), complete, maxdeg, self.stats)

    def run(self, gens, maxdeg: int | None = None) -> GradedBasis:
        """gens: iterable of (exps, coefs) homogeneous polynomials."""
        ix = self.index
        p = self.p
        pending: dict[int, list] = {}
        for exps, coefs in gens:
            exps, coefs = sort_poly(exps, coefs, ix, p)
            if len(coefs):
                pending.setdefault(int(exps[0].sum()), []).append((exps, coefs))
        while True:
            cands = [pr[0] for pr in self.pairs] + list(pending)
            if not cands:
                return self._basis(True, maxdeg)
            d = min(cands)
            if maxdeg is not None and d > maxdeg:
                return self._basis(False, maxdeg)
            if d + 1 > ix.maxdeg:
                raise RuntimeError("degree bound of the monomial index exceeded")
            t0 = time.time()
            sel = [pr for pr in self.pairs if pr[0] == d]
            self.pairs = [pr for pr in self.pairs if pr[0] != d]
            rows = []
            seen = set()
            for _, i, j, lc in sel:
                for g in (i, j):
                    mult = np.array(lc, dtype=np.int64) - self.lead[g]
                    key = (g, mult.tobytes())
                    if key in seen:
                        continue
                    seen.add(key)
                    ex, cf = self.G[g]
                    rows.append((ranks_of(ex.astype(np.int64) + mult, ix.B), cf))
            for ex, cf in pending.pop(d, []):
                rows.append((ix.ranks(ex), cf))
            red = Reducer(self._basis(False, d), d, ix, self.cache_entries)
            new = red.run(rows, new_pivots=True)
            E = ix.table(d)
            for cols, cf in new:
                self._add(E[cols], cf)
            dt = time.time() - t0
            self.stats.append({"degree": d, "rows": len(rows), "new": len(new), "basis": len(self.G),
                               "cached": int(red.fill[0]), "seconds": round(dt, 3)})
            log.info("degree %d: %d rows, %d new, |G|=%d, %.1fs", d, len(rows), len(new), len(self.G), dt)


def groebner_basis(gens, n: int, p: int, maxdeg: int | None = None) -> GradedBasis:
    engine = F4(n, p, maxdeg=(maxdeg or 28) + 2)
    return engine.run(gens, maxdeg)


def minimalize(basis: GradedBasis) -> GradedBasis:
    """Drop elements whose leading monomial is divisible by another leading monomial."""
    L = basis.leading_exponents
    keep = []
    for i in range(len(L)):
        divs = np.all(L <= L[i], axis=1)
        divs[i] = False
        # among equal leads keep the first
        same = np.all(L == L[i], axis=1)
        same[i:] = False
        if not (divs & ~np.all(L == L[i], axis=1)).any() and not same.any():
            keep.append(i)
    return GradedBasis(basis.n, basis.p, [basis.polys[i] for i in keep], basis.complete, basis.maxdeg,
                       basis.stats)


def interreduce(basis: GradedBasis) -> GradedBasis:
    """Reduced Groebner basis: minimal, monic, tails in normal form."""
    B = minimalize(basis)
    out = []
    index = MonomialIndex(B.n, int(B.degrees().max(initial=0)) + 2)
    for d in sorted(set(B.degrees().tolist())):
        # tails lie below their own lead, so the full basis can serve as reducer
        red = Reducer(B, d, index)
        E = index.table(d)
        for ex, cf in B.polys:
            if int(ex[0].sum()) != d:
                continue
            cols = index.ranks(ex)
            tail = red.normal_forms([(cols[1:], cf[1:])])[0]
            cols = np.concatenate([cols[:1], tail[0]])
            cf = np.concatenate([cf[:1], tail[1]])
            out.append((E[cols], cf))
    return GradedBasis(B.n, B.p, out, B.complete, B.maxdeg, B.stats)
