import itertools

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from goepel.groebner import buchberger as bb
from goepel.groebner.f4 import Reducer, groebner_basis, interreduce
from goepel.groebner.hilbert import hilbert_data
from goepel.groebner.ideals import HomogeneousIdeal
from goepel.io import format_ideal, load_basis, read_ideal, save_basis, write_ideal
from goepel.polyring.fields import PrimeField
from goepel.polyring.graded import MonomialIndex
from goepel.polyring.sparse import PolyRing, grevlex_key
from goepel.polyring.textio import format_poly, parse_poly

from conftest import from_pairs, random_homogeneous, to_pairs

P = 101


def _f4_reduced(polys, ring):
    G = interreduce(groebner_basis(to_pairs(polys), ring.n, P))
    out = [g.monic() for g in from_pairs(G.polys, ring)]
    return sorted(out, key=lambda g: grevlex_key(g.leading_monomial()))


def _sympy_reduced(polys, ring):
    syms = sympy.symbols(ring.names)
    exprs = [sum(int(c) * sympy.prod([s ** k for s, k in zip(syms, e)]) for e, c in f.terms.items())
             for f in polys]
    G = sympy.groebner(exprs, *syms, modulus=P, order="grevlex")
    out = []
    for g in G.exprs:
        d = sympy.Poly(g, *syms).as_dict()
        out.append(ring.from_dict({e: int(c) % P for e, c in d.items()}).monic())
    return sorted(out, key=lambda g: grevlex_key(g.leading_monomial()))


@pytest.mark.parametrize("seed", range(6))
def test_three_routes_agree(seed, small_ring):
    rng = np.random.default_rng(seed)
    F = [random_homogeneous(small_ring, int(d), 4, rng) for d in rng.integers(2, 4, 3)]
    f4 = _f4_reduced(F, small_ring)
    buch = bb.groebner(F)
    sym = _sympy_reduced(F, small_ring)
    assert f4 == buch == sym


def test_truncated_basis_is_complete_below_cap(small_ring):
    rng = np.random.default_rng(9)
    F = [random_homogeneous(small_ring, 2, 5, rng) for _ in range(3)]
    full = groebner_basis(to_pairs(F), 4, P)
    trunc = groebner_basis(to_pairs(F), 4, P, maxdeg=3)
    low = sorted(map(tuple, full.leading_exponents[full.degrees() <= 3].tolist()))
    assert sorted(map(tuple, trunc.leading_exponents.tolist())) == low
    assert full.complete and not trunc.complete


def test_normal_forms_detect_membership(small_ring):
    rng = np.random.default_rng(2)
    F = [random_homogeneous(small_ring, 2, 4, rng) for _ in range(2)]
    G = groebner_basis(to_pairs(F), 4, P)
    index = MonomialIndex(4, 6)
    red = Reducer(G, 4, index)
    x, y, z, w = small_ring.gens()
    inside = F[0] * (x * y + 3 * w * w) + F[1] * z * z
    outside = inside + x ** 4
    for f, zero in ((inside, True), (outside, False)):
        (e, c), = to_pairs([f])
        cols, _ = red.normal_forms([(index.ranks(e), c % P)])[0]
        assert (len(cols) == 0) == zero
        assert bb.is_in_ideal(f, bb.groebner(F)) == zero


@pytest.mark.parametrize("degrees", [(2,), (2, 3), (2, 2, 2), (3, 3, 1)])
def test_complete_intersection_hilbert(degrees, small_ring):
    rng = np.random.default_rng(sum(degrees))
    F = [random_homogeneous(small_ring, d, 6, rng) for d in degrees]
    H = HomogeneousIdeal(to_pairs(F), 4, P).hilbert()
    expected = np.array([1])
    for d in degrees:
        expected = np.convolve(expected, np.ones(d, dtype=int))
    assert H.dim == 4 - len(degrees)
    assert list(H.h) == expected.tolist()
    assert H.degree == int(np.prod(degrees))


def test_twisted_cubic():
    ring = PolyRing(["x", "y", "z", "w"], PrimeField(P))
    x, y, z, w = ring.gens()
    F = [x * z - y * y, y * w - z * z, x * w - y * z]
    H = HomogeneousIdeal(to_pairs(F), 4, P).hilbert()
    assert (H.dim, H.degree, list(H.h)) == (2, 3, [1, 2])
    assert all(H.value(d) == 3 * d + 1 for d in range(6))


@settings(max_examples=30, deadline=None)
@given(st.lists(st.lists(st.integers(0, 3), min_size=3, max_size=3), min_size=1, max_size=5))
def test_hilbert_function_of_monomial_ideal(gens):
    gens = [g for g in gens if sum(g)]
    if not gens:
        return
    H = hilbert_data(np.array(gens), 3)
    for d in range(9):
        count = sum(1 for e in itertools.product(range(d + 1), repeat=3)
                    if sum(e) == d and not any(all(a >= b for a, b in zip(e, g)) for g in gens))
        assert H.value(d) == count


def test_parse_and_format_roundtrip(small_ring):
    f = parse_poly("3*x^2*y - 5*z*w + 7/2*w^3", small_ring)
    assert parse_poly(format_poly(f), small_ring) == f


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10_000))
def test_ideal_file_roundtrip(tmp_path_factory, seed):
    ring = PolyRing(["Y1", "Y2", "Y3"], PrimeField(P))
    rng = np.random.default_rng(seed)
    F = [random_homogeneous(ring, 3, 4, rng) for _ in range(3)]
    path = tmp_path_factory.mktemp("io") / "t.ideal"
    digest = write_ideal(path, to_pairs(F), ring.names, P, {"tag": seed})
    header, back = read_ideal(path)
    assert header["tag"] == seed and header["count"] == 3 and len(digest) == 64
    assert from_pairs(back, ring) == F
    assert format_ideal(back, ring.names, P, {"tag": seed}) == path.read_text()


def test_basis_cache_roundtrip(tmp_path, small_ring):
    rng = np.random.default_rng(1)
    F = [random_homogeneous(small_ring, 2, 4, rng) for _ in range(3)]
    G = groebner_basis(to_pairs(F), 4, P)
    save_basis(tmp_path / "g.npz", G)
    H = load_basis(tmp_path / "g.npz")
    assert (H.n, H.p, H.complete) == (G.n, G.p, G.complete)
    assert all(np.array_equal(a[0], b[0]) and np.array_equal(a[1], b[1]) for a, b in zip(G.polys, H.polys))


def test_monomial_index_is_grevlex():
    index = MonomialIndex(4, 5)
    for d in range(5):
        E = [tuple(int(x) for x in e) for e in index.table(d)]
        assert E == sorted(E, key=grevlex_key, reverse=True)
        assert [index.rank(e) for e in E] == list(range(len(E)))
