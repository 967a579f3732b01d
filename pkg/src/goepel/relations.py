"""Relations among Goepel monomials and the ideals they generate.

Each Goepel group G with even coset M gives two monomials in the theta
variables T_1..T_n (n even characteristics): X_G = prod_{m in M} T_m and
Y_G = prod_{m not in M} T_m.  Linear relations among the Y_G come from signed
Riemann trinomials; cubic and quartic binomials are exact collisions of
X-products.  Rewriting every Y_G in a 15-element basis turns the binomials
into the generators of the ideals a (cubics) and b (cubics and quartics).
"""
from __future__ import annotations

import hashlib
import itertools
import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Sequence

import numpy as np

from .characteristics import (K_G, GopelGroup, coset_permutation, classify_orbits, enumerate_gopel_groups,
                              even_characteristics, standard_generators)
from .polyring.fields import QQ, rref
from .polyring.graded import MonomialIndex
from .polyring.linalg import greedy_independent, rational_span_certificate

log = logging.getLogger(__name__)

DEFAULT_PRIME = 557

# a point of V(a) outside V(b), in the basis coordinates
EXTRA_POINT = (-1, 0, 1, 0, 1, 0, 1, -1, 1, 0, 0, 0, 0, 0, 0)


# monomial table


@dataclass(frozen=True)
class MonomialTable:
    """X- and Y-monomials of the Goepel groups as 0/1 exponent vectors over T."""

    genus: int
    groups: tuple[GopelGroup, ...]
    X: np.ndarray  # groups x n_even
    Y: np.ndarray

    @property
    def size(self) -> int:
        return len(self.groups)

    @property
    def cosets(self) -> list[tuple[int, ...]]:
        return [G.coset_indices for G in self.groups]

    def index_of(self, coset: Sequence[int]) -> int:
        target = tuple(sorted(coset))
        for k, G in enumerate(self.groups):
            if G.coset_indices == target:
                return k
        raise KeyError(f"no Goepel group with even coset {target}")


@lru_cache(maxsize=None)
def monomial_table(g: int = 3) -> MonomialTable:
    groups = enumerate_gopel_groups(g)
    n = len(even_characteristics(g))
    X = np.zeros((len(groups), n), dtype=np.int64)
    for k, G in enumerate(groups):
        X[k, [i - 1 for i in G.coset_indices]] = 1
    return MonomialTable(g, groups, X, 1 - X)


# linear relations


@dataclass(frozen=True)
class Trinomial:
    """Signed Riemann trinomial on three disjoint cosets (table indices)."""

    cosets: tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]
    signs: tuple[int, int, int]

    def pair_cosets(self) -> list[tuple[int, ...]]:
        c = self.cosets
        return [tuple(sorted(c[j] + c[k])) for j, k in ((1, 2), (0, 2), (0, 1))]


def _data_text(name: str) -> str:
    return resources.files("goepel.data").joinpath(name).read_text()


def data_checksum(name: str) -> str:
    return hashlib.sha256(_data_text(name).encode()).hexdigest()


def _load(name: str):
    return json.loads(_data_text(name))


def basis_cosets() -> tuple[tuple[int, ...], ...]:
    """Even cosets of the 15 groups whose monomials serve as coordinates Y1..Y15."""
    return tuple(tuple(c) for c in _load("basis_cosets.json")["cosets"])


def noether_forms(n: int = 15) -> np.ndarray:
    """The seven integer linear forms in Y1..Y15 over which R/b is finite, as rows."""
    forms = _load("noether_forms.json")["forms"]
    out = np.zeros((len(forms), n), dtype=np.int64)
    for r, f in enumerate(forms):
        for k, c in f.items():
            out[r, int(k) - 1] = c
    return out


def printed_examples() -> dict:
    return _load("examples.json")


@lru_cache(maxsize=None)
def trinomial_table(g: int) -> tuple[Trinomial, ...]:
    """The checked-in sign table of Riemann trinomials (produced by theta.riemann_trinomials)."""
    raw = _load("trinomial_signs.json")[str(g)]
    return tuple(Trinomial(tuple(tuple(c) for c in t["cosets"]), tuple(t["signs"])) for t in raw)


@dataclass
class RelationSet:
    kind: str
    genus: int
    # linear: integer rows over the Y_G; binomials: pairs of group-index tuples
    rows: np.ndarray | None = None
    binomials: list[tuple[tuple[int, ...], tuple[int, ...]]] = field(default_factory=list)
    provenance: list = field(default_factory=list)

    def __len__(self):
        return len(self.rows) if self.rows is not None else len(self.binomials)


@lru_cache(maxsize=None)
def linear_relations(g: int = 3) -> RelationSet:
    """One relation eps0 Y_(12) + eps1 Y_(02) + eps2 Y_(01) per signed trinomial.

    Multiplying eps0 r0 + eps1 r1 + eps2 r2 = 0 by the theta product outside the
    three cosets turns r_i into the Y-monomial of the union of the other two cosets.
    """
    table = monomial_table(g)
    where = {c: k for k, c in enumerate(table.cosets)}
    rows = []
    for t in trinomial_table(g):
        row = np.zeros(table.size, dtype=np.int64)
        for eps, union in zip(t.signs, t.pair_cosets()):
            row[where[union]] += eps
        rows.append(row)
    return RelationSet("linear", g, rows=np.array(rows), provenance=list(trinomial_table(g)))


def linear_relation_residual(g: int, samples) -> float:
    """Largest relative residual of the linear relations evaluated on Y_G^k at theta samples."""
    from .theta import reciprocal_forms
    R = linear_relations(g).rows
    worst = 0.0
    for S in samples:
        v = reciprocal_forms(S, K_G[g])
        terms = R * v[None, :]
        worst = max(worst, float(np.max(np.abs(terms.sum(axis=1)) / np.abs(terms).max(axis=1))))
    return worst


# basis selection


@dataclass(frozen=True)
class BasisSelection:
    """Basis groups and the rewriting Y_G = sum_j C[G, j] y_j modulo the linear relations."""

    genus: int
    basis: tuple[int, ...]  # group indices of y_1..y_r
    C: np.ndarray  # groups x r, integers

    @property
    def rank(self) -> int:
        return len(self.basis)


def _kernel_rewrite(L: np.ndarray, basis: Sequence[int]) -> np.ndarray:
    """Solve L Y = 0 for the non-basis Y in terms of the basis ones, exactly."""
    n = L.shape[1]
    free = list(basis)
    rest = [i for i in range(n) if i not in set(free)]
    # reorder columns so that non-basis columns come first and must all be pivots
    order = rest + free
    ech, piv = rref(L[:, order].tolist(), QQ)
    if piv != list(range(len(rest))):
        raise ValueError("chosen basis is not complementary to the relation space")
    C = [[Fraction(0)] * len(free) for _ in range(n)]
    for j, b in enumerate(free):
        C[b][j] = Fraction(1)
    for k, i in enumerate(rest):
        for j in range(len(free)):
            C[i][j] = -ech[k][len(rest) + j]
    if any(x.denominator != 1 for row in C for x in row):
        raise ValueError("rewriting coefficients are not integral")
    return np.array([[int(x) for x in row] for row in C], dtype=np.int64)


def select_basis(g: int = 3, cosets: Sequence[Sequence[int]] | None = None) -> BasisSelection:
    """Basis of the Y_G modulo linear relations.

    By default for genus 3 the listed basis cosets are used; otherwise (or with
    cosets=()) the non-pivot columns of the reduced relation matrix are taken.
    """
    if cosets is None and g == 3:
        cosets = basis_cosets()
    return _select_basis(g, tuple(tuple(c) for c in cosets or ()))


@lru_cache(maxsize=None)
def _select_basis(g: int, cosets: tuple) -> BasisSelection:
    table = monomial_table(g)
    L = linear_relations(g).rows
    if cosets:
        basis = tuple(table.index_of(c) for c in cosets)
    else:
        _, piv = rref(L.tolist(), QQ)
        basis = tuple(i for i in range(table.size) if i not in set(piv))
    return BasisSelection(g, basis, _kernel_rewrite(L, basis))


# binomial relations


def _collision_keys(X: np.ndarray, k: int) -> tuple[np.ndarray, np.ndarray]:
    """Exact per-group keys whose sums identify degree-k T-products (counts < k+1)."""
    n = X.shape[1]
    base = k + 1
    half = (n + 1) // 2
    w = np.array([base ** i for i in range(half)], dtype=np.uint64)
    if float(k) * sum(float(base) ** i for i in range(half)) >= 2 ** 63:
        raise ValueError("degree too large for packed keys")
    lo = (X[:, :half].astype(np.uint64) * w[: half]).sum(axis=1)
    hi = (X[:, half:].astype(np.uint64) * w[: n - half]).sum(axis=1)
    return lo, hi


def _combinations(n: int, k: int) -> np.ndarray:
    if k == 1:
        return np.arange(n, dtype=np.int16)[:, None]
    sub = _combinations(n, k - 1)
    blocks = []
    for a in range(n):
        tail = sub[sub[:, 0] > a]
        if len(tail):
            blocks.append(np.hstack([np.full((len(tail), 1), a, dtype=np.int16), tail]))
    return np.vstack(blocks)


def collision_binomials(g: int, k: int, disjoint: bool = True):
    """Pairs of distinct k-sets of groups with identical X-products.

    Returns (binomials, raw_pairs): a collision class of size c contributes
    C(c, 2) pairs; binomials keeps those whose two k-sets are disjoint.
    """
    table = monomial_table(g)
    lo, hi = _collision_keys(table.X, k)
    combos = _combinations(table.size, k)
    klo = lo[combos].sum(axis=1)
    khi = hi[combos].sum(axis=1)
    order = np.lexsort((khi, klo))
    klo, khi = klo[order], khi[order]
    same = (klo[1:] == klo[:-1]) & (khi[1:] == khi[:-1])
    starts = np.nonzero(np.r_[True, ~same])[0]
    ends = np.r_[starts[1:], len(order)]
    raw = 0
    out = []
    for s, e in zip(starts, ends):
        if e - s < 2:
            continue
        members = sorted(tuple(int(x) for x in combos[order[i]]) for i in range(s, e))
        for A, B in itertools.combinations(members, 2):
            raw += 1
            if disjoint and set(A) & set(B):
                continue
            out.append((A, B))
    out.sort()
    return out, raw


def verify_binomial(g: int, A: Sequence[int], B: Sequence[int]) -> bool:
    """Kernel certificate: both sides map to the same T-monomial (X and Y versions)."""
    t = monomial_table(g)
    return bool(np.array_equal(t.X[list(A)].sum(axis=0), t.X[list(B)].sum(axis=0))
                and np.array_equal(t.Y[list(A)].sum(axis=0), t.Y[list(B)].sum(axis=0)))


@lru_cache(maxsize=None)
def cubic_relations(g: int = 3) -> RelationSet:
    pairs, raw = collision_binomials(g, 3)
    return RelationSet("cubic", g, binomials=pairs, provenance=[{"raw_collisions": raw}])


@lru_cache(maxsize=None)
def quartic_relations(g: int = 3) -> RelationSet:
    pairs, raw = collision_binomials(g, 4)
    return RelationSet("quartic", g, binomials=pairs, provenance=[{"raw_collisions": raw}])


def relations(kind: str, g: int = 3) -> RelationSet:
    return {"linear": linear_relations, "cubic": cubic_relations, "quartic": quartic_relations}[kind](g)


# rewriting in the basis coordinates


def expand_products(factors: np.ndarray, index: MonomialIndex) -> np.ndarray:
    """factors: (N, k, r) linear forms; returns (N, size_k) dense coefficients of their products."""
    N, k, r = factors.shape
    cur = factors[:, 0, :].astype(np.int64)
    for step in range(1, k):
        out = np.zeros((N, index.size(step + 1)), dtype=np.int64)
        for i in range(r):
            c = factors[:, step, i]
            if not c.any():
                continue
            out[:, index.multiplication_map(step, i)] += cur * c[:, None]
        cur = out
    return cur


def binomial_matrix(binomials, sel: BasisSelection, index: MonomialIndex | None = None,
                    chunk: int = 2000) -> np.ndarray:
    """Dense rows (over the grevlex table of degree k) of the rewritten binomials."""
    if not binomials:
        return np.zeros((0, 0), dtype=np.int64)
    k = len(binomials[0][0])
    index = index or MonomialIndex(sel.rank, k + 1)
    out = np.zeros((len(binomials), index.size(k)), dtype=np.int64)
    for s in range(0, len(binomials), chunk):
        part = binomials[s:s + chunk]
        A = sel.C[np.array([b[0] for b in part])]
        B = sel.C[np.array([b[1] for b in part])]
        out[s:s + chunk] = expand_products(A, index) - expand_products(B, index)
    return out


def linear_multiples(rows: np.ndarray, d: int, index: MonomialIndex) -> np.ndarray:
    """All products of degree-d rows with the variables, as degree d+1 rows."""
    n = index.n
    out = np.zeros((len(rows) * n, index.size(d + 1)), dtype=np.int64)
    for i in range(n):
        out[i::n][:, index.multiplication_map(d, i)] = rows
    return out


def row_to_poly(row: np.ndarray, d: int, index: MonomialIndex):
    nz = np.nonzero(row)[0]
    return index.table(d)[nz].copy(), row[nz].astype(np.int64)


@dataclass
class GoepelIdeals:
    """Minimal generators of a (cubics) and b (cubics + quartics) in the basis coordinates."""

    genus: int
    nvars: int
    cubics: list  # (exps, coefs) with integer coefficients
    quartics: list
    cubic_sources: list  # binomial behind each chosen cubic
    quartic_sources: list
    counts: dict

    @property
    def a(self) -> list:
        return list(self.cubics)

    @property
    def b(self) -> list:
        return list(self.cubics) + list(self.quartics)


def build_ideals(g: int = 3, p: int = DEFAULT_PRIME, sel: BasisSelection | None = None,
                 certify_rational: bool = True) -> GoepelIdeals:
    """Greedy minimal generators: cubics independent mod p; quartics independent modulo
    the linear multiples of the cubics.  The cubic dimension is also certified over Q."""
    sel = sel or select_basis(g)
    index = MonomialIndex(sel.rank, 6)
    cub = cubic_relations(g).binomials
    P3 = binomial_matrix(cub, sel, index)
    c_idx, _ = greedy_independent(P3, p)
    counts = {"cubic_binomials": len(cub), "cubic_dim_mod_p": len(c_idx)}
    if certify_rational:
        counts["cubic_dim_rational"] = len(c_idx) if rational_span_certificate(P3, c_idx) else None
    cubics = [row_to_poly(P3[i], 3, index) for i in c_idx]
    quartics, q_src = [], []
    if g == 3:
        qrel = quartic_relations(g)
        P4 = binomial_matrix(qrel.binomials, sel, index)
        base = linear_multiples(P3[c_idx], 3, index)
        q_idx, E = greedy_independent(P4, p, base=base)
        counts.update({"quartic_binomials": len(qrel.binomials),
                       "quartic_raw_collisions": qrel.provenance[0]["raw_collisions"],
                       "cubic_multiples_rank": E.rank - len(q_idx),
                       "minimal_quartics": len(q_idx)})
        quartics = [row_to_poly(P4[i], 4, index) for i in q_idx]
        q_src = [qrel.binomials[i] for i in q_idx]
    return GoepelIdeals(g, sel.rank, cubics, quartics, [cub[i] for i in c_idx], q_src, counts)


# orbits under the modular group


def _group_permutations(g: int) -> list[np.ndarray]:
    return [coset_permutation(M) for M in standard_generators(g)]


def canonical_binomial(A, B) -> tuple:
    A, B = tuple(sorted(A)), tuple(sorted(B))
    return (A, B) if A <= B else (B, A)


def binomial_orbits(binomials, g: int = 3) -> list[list]:
    perms = _group_permutations(g)

    def act(perm, item):
        A, B = item
        return canonical_binomial([int(perm[i]) for i in A], [int(perm[i]) for i in B])

    items = [canonical_binomial(A, B) for A, B in binomials]
    return classify_orbits(items, act, perms)


def is_equivariant(binomials, g: int = 3) -> bool:
    """Closure check: each generator maps the binomial set into itself."""
    items = {canonical_binomial(A, B) for A, B in binomials}
    for perm in _group_permutations(g):
        for A, B in items:
            if canonical_binomial([int(perm[i]) for i in A], [int(perm[i]) for i in B]) not in items:
                return False
    return True


def find_binomial(binomials, cosets_left, cosets_right, g: int = 3) -> bool:
    """Whether the binomial between the two lists of cosets is present."""
    t = monomial_table(g)
    A = [t.index_of(c) for c in cosets_left]
    B = [t.index_of(c) for c in cosets_right]
    target = canonical_binomial(A, B)
    return target in {canonical_binomial(a, b) for a, b in binomials}


# evaluation helpers


def evaluate_generators(polys, point, p: int | None = None) -> list[int]:
    """Values of (exps, coefs) polynomials at an integer point (mod p if given)."""
    x = np.asarray(point, dtype=object)
    out = []
    for exps, coefs in polys:
        total = 0
        for e, c in zip(exps, coefs):
            t = int(c)
            for xi, k in zip(x, e):
                if k:
                    t *= int(xi) ** int(k)
            total += t
        out.append(total % p if p else total)
    return out
