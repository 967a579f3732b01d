"""Theta constants on the Siegel upper half space and numeric relation finding."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

import mpmath
import numpy as np
import scipy.linalg

from .characteristics import (
    Characteristic, GopelGroup, K_G, even_characteristics, even_index, enumerate_gopel_groups,
    is_even, unpack,
)

RESIDUAL_TOL = 1e-10
RANK_GAP = 1e6
DOUBLE_EPS = 1e-14


@dataclass(frozen=True, eq=False)
class SiegelPoint:
    """Z = X + iY with Z symmetric and Y positive definite."""

    Z: np.ndarray
    precision: float = 1e-20

    def __post_init__(self):
        Z = np.array(self.Z, dtype=complex)
        if Z.ndim != 2 or Z.shape[0] != Z.shape[1]:
            raise ValueError("Z must be square")
        # keep the upper triangle, mirror it
        Z = np.triu(Z) + np.triu(Z, 1).T
        try:
            np.linalg.cholesky(Z.imag)
        except np.linalg.LinAlgError:
            raise ValueError("imaginary part is not positive definite") from None
        Z.setflags(write=False)
        object.__setattr__(self, "Z", Z)

    @property
    def genus(self) -> int:
        return self.Z.shape[0]

    @property
    def min_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh(self.Z.imag)[0])

    def scaled(self, c: float) -> "SiegelPoint":
        return SiegelPoint(c * self.Z, self.precision)


def random_siegel_point(g: int, rng: np.random.Generator, precision: float = 1e-20,
                        coupling: float = 0.3) -> SiegelPoint:
    X = rng.uniform(-0.5, 0.5, (g, g))
    X = (X + X.T) / 2
    S = rng.uniform(-0.5, 0.5, (g, g))
    S = (S + S.T) / 2
    Y = np.diag(rng.uniform(1.0, 2.0, g)) + coupling * S
    return SiegelPoint(X + 1j * Y, precision)


def tail_bound(lam: float, g: int, N: int) -> float:
    """Bound for the sum of |terms| outside the box max|n_i| <= N."""
    total = 0.0
    k = N + 1
    while True:
        shell = (2 * k + 1) ** g - (2 * k - 1) ** g
        term = shell * math.exp(-math.pi * lam * (k - 0.5) ** 2)
        total += term
        if term < 1e-40 or k > N + 200:
            return total
        k += 1


def truncation_radius(P: SiegelPoint, eps: float, cap: int = 60) -> int:
    lam = P.min_eigenvalue
    for N in range(1, cap + 1):
        if tail_bound(lam, P.genus, N) < eps:
            return N
    raise ValueError(f"precision {eps} unachievable with truncation cap {cap}")


@lru_cache(maxsize=64)
def _box(g: int, N: int) -> np.ndarray:
    return np.array(list(itertools.product(range(-N, N + 1), repeat=g)), dtype=float)


def _as_bits(m, g: int | None) -> tuple[int, int]:
    if isinstance(m, Characteristic):
        return m.bits, m.genus
    if g is None:
        raise ValueError("genus needed for packed characteristic")
    return int(m), g


def theta_nullwert(m, P: SiegelPoint, precision: float | None = None):
    """Theta null value at P; odd characteristics give exactly 0.

    Returns a Python complex in double precision, or an mpmath.mpc when the
    requested precision is finer than double precision can deliver.
    """
    bits, g = _as_bits(m, P.genus)
    if g != P.genus:
        raise ValueError("genus mismatch")
    if not is_even(bits, g):
        return 0
    eps = P.precision if precision is None else precision
    v = unpack(bits, g)
    a = np.array(v[:g], dtype=float)
    b = np.array(v[g:], dtype=float)
    if eps >= DOUBLE_EPS:
        N = truncation_radius(P, eps)
        x = _box(g, N) + a / 2
        q = np.einsum("ki,ij,kj->k", x, P.Z, x)
        return complex(np.exp(1j * np.pi * (q + x @ b)).sum())
    return _theta_mp(a, b, P, eps)


def _theta_mp(a, b, P: SiegelPoint, eps: float):
    g = P.genus
    N = truncation_radius(P, eps / 10)
    digits = int(-math.log10(eps)) + 10
    with mpmath.workdps(digits):
        Z = [[mpmath.mpc(complex(P.Z[i, j])) for j in range(g)] for i in range(g)]
        total = mpmath.mpc(0)
        for n in itertools.product(range(-N, N + 1), repeat=g):
            x = [mpmath.mpf(n[i]) + mpmath.mpf(a[i]) / 2 for i in range(g)]
            q = mpmath.fsum(Z[i][j] * x[i] * x[j] for i in range(g) for j in range(g))
            lin = mpmath.fsum(x[i] * int(b[i]) for i in range(g))
            total += mpmath.exp(mpmath.mpc(0, 1) * mpmath.pi * (q + lin))
        return +total


def theta_vector(P: SiegelPoint, precision: float = 1e-15) -> np.ndarray:
    """All even theta constants at P, in table order (double precision)."""
    g = P.genus
    N = truncation_radius(P, max(precision, DOUBLE_EPS))
    box = _box(g, N)
    out = np.empty(len(even_characteristics(g)), dtype=complex)
    by_a: dict[int, tuple[np.ndarray, np.ndarray]] = {}
    for k, m in enumerate(even_characteristics(g)):
        v = unpack(m, g)
        key = m & ((1 << g) - 1)
        if key not in by_a:
            x = box + np.array(v[:g], dtype=float) / 2
            by_a[key] = (x, np.exp(1j * np.pi * np.einsum("ki,ij,kj->k", x, P.Z, x)))
        x, w = by_a[key]
        out[k] = (w * np.exp(1j * np.pi * (x @ np.array(v[g:], dtype=float)))).sum()
    return out


def second_kind(P: SiegelPoint, precision: float = 1e-15) -> np.ndarray:
    """f_a(Z) = sum_n exp(2 pi i Z[n + a/2]) for all a in F_2^g (index = packed a)."""
    g = P.genus
    # the doubled point has twice the decay rate
    N = truncation_radius(P.scaled(2.0), max(precision, DOUBLE_EPS))
    box = _box(g, N)
    out = np.empty(1 << g, dtype=complex)
    for a in range(1 << g):
        x = box + np.array([(a >> i) & 1 for i in range(g)], dtype=float) / 2
        out[a] = np.exp(2j * np.pi * np.einsum("ki,ij,kj->k", x, P.Z, x)).sum()
    return out


@dataclass(frozen=True, eq=False)
class ThetaSample:
    point: SiegelPoint
    theta: np.ndarray
    second_kind: np.ndarray = field(repr=False)

    @property
    def genus(self) -> int:
        return self.point.genus

    def value(self, index: int) -> complex:
        """Theta constant by 1-based table index."""
        return self.theta[index - 1]

    def product(self, indices: Sequence[int], power: int = 1) -> complex:
        return complex(np.prod([self.theta[i - 1] for i in indices])) ** power

    @property
    def full_product(self) -> complex:
        return complex(np.prod(self.theta))


def make_sample(P: SiegelPoint) -> ThetaSample:
    th = theta_vector(P)
    th.setflags(write=False)
    f = second_kind(P)
    f.setflags(write=False)
    return ThetaSample(P, th, f)


def random_samples(g: int, count: int, seed: int = 0) -> list[ThetaSample]:
    rng = np.random.default_rng(seed)
    return [make_sample(random_siegel_point(g, rng)) for _ in range(count)]


def gopel_form(G: GopelGroup, S: ThetaSample) -> complex:
    if G.genus != S.genus:
        raise ValueError("genus mismatch")
    return S.product(G.coset_indices)


def reciprocal_form(G: GopelGroup, S: ThetaSample) -> complex:
    if G.genus != S.genus:
        raise ValueError("genus mismatch")
    return S.product(G.complement_indices)


def gopel_forms(S: ThetaSample, power: int = 1) -> np.ndarray:
    return np.array([gopel_form(G, S) for G in enumerate_gopel_groups(S.genus)]) ** power


def reciprocal_forms(S: ThetaSample, power: int = 1) -> np.ndarray:
    return np.array([reciprocal_form(G, S) for G in enumerate_gopel_groups(S.genus)]) ** power


# numeric linear algebra


def monomials(n: int, d: int) -> list[tuple[int, ...]]:
    """Exponent vectors of degree d in n variables, lexicographically descending."""
    out = []
    for combo in itertools.combinations_with_replacement(range(n), d):
        e = [0] * n
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


def monomial_values(values: np.ndarray, exps: Sequence[tuple[int, ...]]) -> np.ndarray:
    """values: samples x n.  Returns samples x len(exps) with unit-max rows."""
    E = np.array(exps, dtype=int)
    V = np.prod(values[:, None, :] ** E[None, :, :], axis=2)
    return V / np.abs(V).max(axis=1, keepdims=True)


def numerical_rank(V: np.ndarray, gap: float = RANK_GAP) -> int:
    """Rank from the largest drop in singular values; the drop must exceed gap."""
    s = np.linalg.svd(V, compute_uv=False)
    s = s[s > 0]
    if len(s) <= 1:
        return len(s)
    ratios = s[:-1] / s[1:]
    k = int(np.argmax(ratios))
    if ratios[k] < gap:
        # no clear drop: full rank if the smallest value is well away from roundoff
        if s[-1] / s[0] > 1e-8:
            return len(s)
        raise ValueError("rank indeterminate: no singular-value gap above threshold")
    return k + 1


def verify_linear_independence(values: np.ndarray) -> int:
    """Numerical rank of a samples x forms value matrix."""
    return numerical_rank(_equilibrate(values)[0])


def _rationalize(K: np.ndarray, max_den: int = 64, tol: float = 1e-5) -> np.ndarray:
    """Integer basis for the row space of a numeric kernel basis K (k x n).

    Distinct fractions with denominators <= 64 are at least 1/4096 apart, so a
    loose tolerance still rounds unambiguously; the integer relations are then
    re-verified at fresh points by the caller.
    """
    k = K.shape[0]
    if k == 0:
        return np.zeros((0, K.shape[1]), dtype=np.int64)
    _, _, piv = scipy.linalg.qr(K, pivoting=True)
    piv = np.sort(piv[:k])
    R = np.linalg.solve(K[:, piv], K)
    rows = []
    for r in R:
        if np.abs(r.imag).max() > tol:
            raise ValueError("kernel vector is not real")
        fr = [Fraction(float(x)).limit_denominator(max_den) for x in r.real]
        if max(abs(float(f) - x) for f, x in zip(fr, r.real)) > tol:
            raise ValueError("rationalization failed: increase precision")
        den = math.lcm(*(f.denominator for f in fr))
        ints = [int(f * den) for f in fr]
        g = math.gcd(*ints)
        rows.append([x // g for x in ints])
    return np.array(rows, dtype=np.int64)


def relation_residual(coeffs: np.ndarray, values: np.ndarray, exps) -> float:
    """max over samples of |sum c_j m_j| relative to the largest term."""
    E = np.array(exps, dtype=int)
    worst = 0.0
    for row in values:
        m = np.prod(row[None, :] ** E, axis=1)
        terms = coeffs * m
        scale = np.abs(terms).max()
        worst = max(worst, abs(terms.sum()) / scale if scale else 0.0)
    return worst


@dataclass
class RelationSpace:
    degree: int
    exponents: list[tuple[int, ...]]
    relations: np.ndarray  # integer rows over the monomials
    residual: float

    @property
    def dimension(self) -> int:
        return len(self.relations)


def _equilibrate(V: np.ndarray, rounds: int = 3) -> tuple[np.ndarray, np.ndarray]:
    """Alternate row and column normalization; returns the scaled matrix and column factors.

    Row scaling leaves the kernel unchanged and column scaling is undone by the
    returned factors, while the singular-value gap at the true rank widens.
    """
    scale = np.ones(V.shape[1])
    for k in range(rounds):
        c = np.linalg.norm(V, axis=0)
        c[c == 0] = 1.0
        V = V / c
        scale /= c
        if k + 1 < rounds:
            V = V / np.linalg.norm(V, axis=1, keepdims=True)
    return V, scale


def find_relations(evaluate: Callable[[ThetaSample], np.ndarray], degree: int,
                   samples: Sequence[ThetaSample], fresh: Sequence[ThetaSample],
                   max_den: int = 64) -> RelationSpace:
    """Integer basis of the degree-d relations among the evaluated forms."""
    values = np.array([evaluate(s) for s in samples])
    n = values.shape[1]
    exps = monomials(n, degree)
    if len(samples) < len(exps):
        raise ValueError("need at least as many samples as monomials")
    V, scale = _equilibrate(monomial_values(values, exps))
    r = numerical_rank(V)
    _, _, Vh = np.linalg.svd(V)
    # V diag(scale) k' = 0 means k = scale * k' is a relation of the unscaled values
    K = Vh[r:].conj() * scale[None, :]
    rel = _rationalize(K, max_den)
    check = np.array([evaluate(s) for s in fresh])
    res = max((relation_residual(row, check, exps) for row in rel), default=0.0)
    if res > RESIDUAL_TOL:
        raise ValueError(f"relations fail on fresh points (residual {res:.2e})")
    return RelationSpace(degree, exps, rel, res)


# Riemann relations


def signed_residual(terms: np.ndarray, signs: Sequence[int]) -> float:
    """terms: samples x k products; residual of the signed sum relative to the largest."""
    t = terms * np.asarray(signs)
    return float(np.max(np.abs(t.sum(axis=1)) / np.abs(t).max(axis=1)))


def discover_signs(supports: Sequence[dict[int, int]], samples: Sequence[ThetaSample]) -> tuple[int, ...]:
    """Signs (first one +1) making sum eps_i prod theta_m^e vanish at every sample.

    supports: one {table index: exponent} map per term.
    """
    terms = np.array([[np.prod([s.value(i) ** e for i, e in sup.items()]) for sup in supports]
                      for s in samples])
    for tail in itertools.product((1, -1), repeat=len(supports) - 1):
        signs = (1,) + tail
        if signed_residual(terms, signs) < RESIDUAL_TOL:
            return signs
    raise ValueError("no sign assignment makes the relation vanish")


def riemann_supports(p: int, q: int, g: int) -> list[dict[int, int]]:
    """Distinct products theta[m]theta[m+p]theta[m+q]theta[m+p+q] with all four even."""
    idx = even_index(g)
    seen = []
    for m in even_characteristics(g):
        quad = (m, m ^ p, m ^ q, m ^ p ^ q)
        if not all(is_even(x, g) for x in quad):
            continue
        sup: dict[int, int] = {}
        for x in quad:
            sup[idx[x]] = sup.get(idx[x], 0) + 1
        if sup not in seen:
            seen.append(sup)
    return seen


def discover_riemann_signs(p: int, q: int, samples: Sequence[ThetaSample]):
    """Signed Riemann relation for the pair (p, q)."""
    sups = riemann_supports(p, q, samples[0].genus)
    return sups, discover_signs(sups, samples)


@dataclass(frozen=True)
class RiemannTrinomial:
    """eps_0 r_0 + eps_1 r_1 + eps_2 r_2 = 0, r_i = prod over cosets[i] of theta^power."""

    cosets: tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]
    signs: tuple[int, int, int]
    power: int

    def supports(self) -> list[dict[int, int]]:
        return [{i: self.power for i in c} for c in self.cosets]

    def terms(self, S: ThetaSample) -> np.ndarray:
        return np.array([S.product(c, self.power) for c in self.cosets])

    def pair_cosets(self) -> list[tuple[int, ...]]:
        """Goepel cosets cosets[j] + cosets[k] for the pairs (1,2), (0,2), (0,1)."""
        c = self.cosets
        return [tuple(sorted(c[j] + c[k])) for j, k in ((1, 2), (0, 2), (0, 1))]


def trinomial_cosets(g: int) -> list[tuple[tuple[int, ...], ...]]:
    """Subspaces of dimension g-1 having exactly three fully even cosets.

    Returns the triples of cosets (as sorted table indices) for which the
    three cosets are disjoint and every pairwise union is an even Goepel coset.
    """
    idx = even_index(g)
    gopel = {G.coset_indices for G in enumerate_gopel_groups(g)}
    dim = 2 * g
    subspaces = set()
    for basis in itertools.combinations(range(1, 1 << dim), g - 1):
        S = {0}
        for v in basis:
            S |= {v ^ w for w in S}
        if len(S) == 1 << (g - 1):
            subspaces.add(frozenset(S))
    out = []
    for N in sorted(subspaces, key=sorted):
        cosets = set()
        for a in range(1 << dim):
            C = frozenset(a ^ x for x in N)
            if all(is_even(x, g) for x in C):
                cosets.add(tuple(sorted(idx[x] for x in C)))
        if len(cosets) != 3:
            continue
        cs = tuple(sorted(cosets))
        if len(set(sum(cs, ()))) != 3 * len(N):
            continue
        if all(tuple(sorted(cs[j] + cs[k])) in gopel for j, k in ((0, 1), (0, 2), (1, 2))):
            out.append(cs)
    return out


def riemann_trinomials(g: int, samples: Sequence[ThetaSample]) -> list[RiemannTrinomial]:
    power = K_G[g]
    out = []
    for cs in trinomial_cosets(g):
        sups = [{i: power for i in c} for c in cs]
        out.append(RiemannTrinomial(cs, discover_signs(sups, samples), power))
    return out


def trinomial_identity_residual(t: RiemannTrinomial, S: ThetaSample) -> float:
    """Residual of 2 r1 r2 = r3^2 - r1^2 - r2^2 with r3 = r1 + r2 from the signed relation."""
    e = np.array(t.signs)
    r = t.terms(S) * e
    # eps0 r0 + eps1 r1 + eps2 r2 = 0  gives  r3 := -eps2 r2 = eps0 r0 + eps1 r1
    r1, r2, r3 = r[0], r[1], -r[2]
    lhs, rhs = 2 * r1 * r2, r3 ** 2 - r1 ** 2 - r2 ** 2
    return abs(lhs - rhs) / max(abs(r1) ** 2, abs(r2) ** 2, abs(r3) ** 2)
