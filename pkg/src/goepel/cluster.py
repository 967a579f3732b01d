"""Noether normalization of R/b, the zero-dimensional cluster cut out by six of the
Noether forms, its eliminant, Galois orbits and the regularity of its points.

Coordinates: z = T Y where the seven Noether forms are z_9..z_15 and z_1..z_8
are the Y variables not used as pivots.  Setting z_10..z_15 = 0 leaves a
one-dimensional cone in z_1..z_9 (175 projective points); z_9 = 1 is the chart.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .groebner.f4 import GradedBasis, groebner_basis
from .groebner.hilbert import HilbertData, hilbert_data
from .groebner.ideals import (CoordinateChange, ZeroDimensionalSlice, complete_to_unimodular, jacobian_rank,
                              restrict, shape_coordinates, substitute)
from .polyring import univariate as U
from .polyring.fields import ExtensionField
from .relations import noether_forms

log = logging.getLogger(__name__)


def noether_change(n: int = 15) -> CoordinateChange:
    F = noether_forms(n)
    forms = [{int(v) + 1: int(c) for v, c in enumerate(row) if c} for row in F]
    return complete_to_unimodular(forms, n)


def in_noether_coordinates(gens, p: int, n: int = 15) -> tuple[CoordinateChange, list]:
    ch = noether_change(n)
    return ch, substitute(gens, ch.A % p, p, n)


def cut_by_forms(gens_z, n: int, count: int) -> list:
    """Set the last `count` coordinates (Noether forms) to zero."""
    return restrict(gens_z, list(range(n - count)))


@dataclass
class ArtinianReduction:
    basis: GradedBasis
    hilbert: HilbertData

    @property
    def length(self) -> int:
        return int(sum(self.hilbert.h))

    @property
    def nonnegative(self) -> bool:
        return all(c >= 0 for c in self.hilbert.h)


def artinian_reduction(gens, p: int, n: int = 15, forms: int = 7) -> ArtinianReduction:
    """R/(b + forms): its Hilbert series is a polynomial iff the forms are a system of parameters."""
    _, gz = in_noether_coordinates(gens, p, n)
    cut = cut_by_forms(gz, n, forms)
    G = groebner_basis(cut, n - forms, p)
    return ArtinianReduction(G, hilbert_data(G.leading_exponents, n - forms))


def cluster_slice(gens, p: int, n: int = 15, forms: int = 6) -> tuple[CoordinateChange, ZeroDimensionalSlice]:
    ch, gz = in_noether_coordinates(gens, p, n)
    m = n - forms
    G = groebner_basis(cut_by_forms(gz, n, forms), m, p)
    return ch, ZeroDimensionalSlice(G, m - 1, hilbert_data(G.leading_exponents, m))


@dataclass
class Eliminant:
    """Minimal polynomial of a random linear form on the cluster, with its factorization pattern."""

    poly: np.ndarray
    form: np.ndarray
    p: int
    coordinates: list  # h_v with z_v = h_v(u) on the cluster

    @property
    def degree(self) -> int:
        return U.degree(self.poly)

    @property
    def squarefree(self) -> bool:
        return U.is_squarefree(self.poly, self.p)

    def orbit_degrees(self) -> list[int]:
        return sorted(U.ddf_degrees(self.poly, self.p))


def eliminant(sl: ZeroDimensionalSlice, seed: int = 1) -> Eliminant:
    p = sl.basis.p
    m = sl.basis.n
    rng = np.random.default_rng(seed)
    u = np.zeros(m, dtype=np.int64)
    u[: m - 1] = rng.integers(1, p, m - 1)
    unit = [np.eye(m, dtype=np.int64)[v] for v in range(m - 1)]
    Ms = sl.multiplication_matrices([u] + unit)
    f, hs = shape_coordinates(Ms[0], Ms[1:], p, rng)
    return Eliminant(f, u, p, hs)


def orbit_points(el: Eliminant, ch: CoordinateChange, n: int = 15, seed: int = 2):
    """One point per irreducible factor of the eliminant, in Y-coordinates over F_p[t]/(factor)."""
    p = el.p
    rng = np.random.default_rng(seed)
    out = []
    A = ch.A % p
    for F in U.factor_squarefree(el.poly, p, rng):
        K = ExtensionField(p, F, check=False)
        t = K.gen()
        z = [_evaluate_poly(h, t, K) for h in el.coordinates]
        z.append(K.one())  # chart coordinate
        z += [K.zero()] * (n - len(z))
        Y = [sum((z[j] * int(A[i, j]) for j in range(n) if A[i, j]), K.zero()) for i in range(n)]
        out.append((K, Y))
    return out


def _evaluate_poly(h, x, K):
    acc = K.zero()
    for c in U.trim(np.asarray(h))[::-1]:
        acc = acc * x + int(c)
    return acc


def evaluate_ext(gens, point, K: ExtensionField) -> list:
    """Values of integer polynomials at a point over an extension field."""
    out = []
    cache: dict = {}

    def power(i, k):
        key = (i, k)
        if key not in cache:
            cache[key] = point[i] ** k
        return cache[key]

    for exps, coefs in gens:
        acc = K.zero()
        for e, c in zip(np.asarray(exps, dtype=np.int64), coefs):
            term = K.convert(int(c))
            for i in np.nonzero(e)[0]:
                term = term * power(int(i), int(e[i]))
            acc = acc + term
        out.append(acc)
    return out


@dataclass
class RegularityCheck:
    orbit_degree: int
    vanishes: bool
    jacobian_rank: int


def regularity(gens, points, n: int = 15) -> list[RegularityCheck]:
    out = []
    for K, Y in points:
        vals = evaluate_ext(gens, Y, K)
        r = jacobian_rank(gens, n, Y, K)
        out.append(RegularityCheck(K.k, all(v.is_zero() for v in vals), r))
        log.info("orbit of degree %d: rank %d", K.k, r)
    return out

