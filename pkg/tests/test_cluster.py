import numpy as np
import pytest
import sympy

from goepel import cluster
from goepel.groebner.f4 import groebner_basis
from goepel.groebner.hilbert import hilbert_data
from goepel.groebner.ideals import (CoordinateChange, ZeroDimensionalSlice, complete_to_unimodular,
                                    jacobian_rank, krylov_minimal_polynomial, substitute)
from goepel.polyring import univariate as U
from goepel.polyring.fields import ExtensionField, PrimeField
from goepel.polyring.sparse import PolyRing
from goepel.relations import noether_forms

from conftest import to_pairs

P = 557


def toy_slice():
    """Points in the chart w = 1: x in {1} and the roots of x^2 - 5 (irreducible mod 557), y = 2x."""
    assert pow(5, (P - 1) // 2, P) == P - 1
    ring = PolyRing(["x", "y", "w"], PrimeField(P))
    x, y, w = ring.gens()
    F = [(x * x - 5 * w * w) * (x - w), y - 2 * x]
    G = groebner_basis(to_pairs(F), 3, P)
    return ring, F, ZeroDimensionalSlice(G, 2, hilbert_data(G.leading_exponents, 3))


def test_toy_eliminant():
    _, _, sl = toy_slice()
    assert (sl.hilbert.dim, sl.degree) == (1, 3)
    el = cluster.eliminant(sl, seed=3)
    assert el.degree == 3 and el.squarefree
    assert el.orbit_degrees() == [1, 2]
    # the eliminant of u = a x + b y is the product over the points of (t - u(point))
    a, b = int(el.form[0]), int(el.form[1])
    t, s = sympy.symbols("t s")
    expected = sympy.Poly(sympy.expand((t - (a + 2 * b)) * ((t) ** 2 - 5 * (a + 2 * b) ** 2)), t, modulus=P)
    got = sympy.Poly(sum(int(c) * t ** i for i, c in enumerate(el.poly)), t, modulus=P)
    assert got == expected


def test_toy_orbit_points_are_regular():
    ring, F, sl = toy_slice()
    el = cluster.eliminant(sl, seed=3)
    pts = cluster.orbit_points(el, CoordinateChange(np.eye(3, dtype=np.int64), np.eye(3, dtype=np.int64)), n=3)
    checks = cluster.regularity(to_pairs(F), pts, n=3)
    assert sorted(c.orbit_degree for c in checks) == [1, 2]
    assert all(c.vanishes and c.jacobian_rank == 2 for c in checks)


def test_jacobian_rank_drops_at_singular_point():
    # the nodal cubic y^2 w - x^2 (x + w) is singular at (0:0:1)
    ring = PolyRing(["x", "y", "w"], PrimeField(P))
    x, y, w = ring.gens()
    f = to_pairs([y * y * w - x * x * (x + w)])
    K = ExtensionField(P, [P - 2, 0, 1])  # t^2 = 2
    node = [K.zero(), K.zero(), K.one()]
    assert jacobian_rank(f, 3, node, K) == 0
    smooth = [K.convert(3), K.convert(6), K.one()]  # 36 = 9 * 4
    assert jacobian_rank(f, 3, smooth, K) == 1


def test_krylov_matches_sympy_minpoly():
    rng = np.random.default_rng(0)
    M = rng.integers(0, P, (6, 6))
    f, _ = krylov_minimal_polynomial(M, P, rng)
    cp = sympy.Matrix(M.tolist()).charpoly().all_coeffs()[::-1]
    # a random matrix is cyclic, so its minimal polynomial is the characteristic polynomial
    assert U.trim(f).tolist() == [int(c) % P for c in cp]


def test_noether_change_is_unimodular():
    ch = cluster.noether_change()
    assert np.array_equal(ch.T @ ch.A, np.eye(15, dtype=np.int64))
    assert np.array_equal(ch.T[8:], noether_forms())


def test_substitution_is_a_ring_map():
    ch = complete_to_unimodular([{1: 1, 2: 2}, {3: 1}], 3)
    ring = PolyRing(["a", "b", "c"], PrimeField(P))
    a, b, c = ring.gens()
    f = a * b + 3 * c * c
    (img,) = substitute(to_pairs([f]), ch.A % P, P, 3)
    z = np.array([2, 7, 11])
    yv = ch.A @ z
    val = sum(int(cf) * int(np.prod(z ** e.astype(int))) for e, cf in zip(*img)) % P
    assert val == (yv[0] * yv[1] + 3 * yv[2] ** 2) % P


def test_non_unimodular_rejected():
    with pytest.raises(ValueError):
        complete_to_unimodular([{1: 1, 2: 1}, {1: 1, 2: 1}], 2)
