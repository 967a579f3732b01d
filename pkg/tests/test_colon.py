import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from goepel.colon import certify_zero_dimensional, colon_piece, vanishing_forms
from goepel.groebner import buchberger as bb
from goepel.groebner.f4 import groebner_basis, interreduce
from goepel.membership import certify_product, hitting_sets
from goepel.polyring.fields import PrimeField
from goepel.polyring.graded import MonomialIndex
from goepel.polyring.sparse import PolyRing

from conftest import from_pairs, random_homogeneous, to_pairs

P = 101


def _degree_part_dim(G, k, n):
    """dim of the degree-k part of the ideal with reduced basis G (sparse polys), by linear algebra."""
    from goepel.polyring.fields import rank_mod_p
    index = MonomialIndex(n, k + 1)
    rows = []
    for g in G:
        d = g.degree()
        if d > k:
            continue
        for m in index.table(k - d):
            v = np.zeros(index.size(k), dtype=np.int64)
            for e, c in g.terms.items():
                v[index.rank(np.array(e) + m)] += int(c)
            rows.append(v % P)
    return rank_mod_p(np.array(rows), P) if rows else 0


def test_explicit_colon():
    ring = PolyRing(["x", "y", "z"], PrimeField(P))
    x, y, z = ring.gens()
    a = [x * z, y * z]
    Ga = groebner_basis(to_pairs(a), 3, P)
    piece = colon_piece(Ga, to_pairs([z]), 1)
    assert piece.verified
    # (a : z)_1 = span(x, y)
    assert len(piece.polys) == 2
    assert all(e[2] == 0 for f in from_pairs(piece.polys, ring) for e in f.terms)
    cert = certify_zero_dimensional(Ga, to_pairs(a), to_pairs([z]), 1)
    assert cert.zero_dimensional and cert.degree_bound == 1


@pytest.mark.parametrize("seed", range(4))
def test_colon_piece_matches_buchberger(seed):
    ring = PolyRing(["x", "y", "z"], PrimeField(P))
    x, y, z = ring.gens()
    rng = np.random.default_rng(seed)
    # a = (l1 l2, l1 l3) has a line component; b adds a generic quadric
    l1, l2, l3 = (ring.from_linear(rng.integers(1, P, 3)) for _ in range(3))
    a = [l1 * l2, l1 * l3 * ring.from_linear(rng.integers(1, P, 3))]
    q = random_homogeneous(ring, 2, 5, rng)
    reference = bb.colon(a, [q])
    Ga = interreduce(groebner_basis(to_pairs(a), 3, P, maxdeg=6))
    for k in (1, 2, 3):
        piece = colon_piece(Ga, to_pairs([q]), k)
        assert piece.verified
        assert len(piece.polys) == _degree_part_dim(reference, k, 3)
        for h in from_pairs(piece.polys, ring):
            assert bb.is_in_ideal(h, reference)


def test_points_restrict_without_changing_the_answer():
    ring = PolyRing(["x", "y", "z"], PrimeField(P))
    x, y, z = ring.gens()
    a = [x * z, y * z]
    Ga = groebner_basis(to_pairs(a), 3, P)
    # (0:0:1) lies on V(a) and off V(z)
    full = colon_piece(Ga, to_pairs([z]), 2)
    cut = colon_piece(Ga, to_pairs([z]), 2, points=np.array([[0, 0, 1]]))
    assert len(full.polys) == len(cut.polys) == 5


def test_vanishing_forms():
    index = MonomialIndex(3, 3)
    pts = np.array([[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]])
    C = vanishing_forms(pts, 2, P, index)
    assert C.shape == (2, 6)
    E = index.table(2).astype(np.int64)
    vals = np.array([[np.prod(pt ** e) for e in E] for pt in pts])
    assert not (C @ vals.T % P).any()


@settings(max_examples=30, deadline=None)
@given(st.lists(st.lists(st.integers(-1, 1), min_size=5, max_size=5), min_size=1, max_size=8))
def test_hitting_sets_hit(points):
    pts = np.array(points)
    flags = np.ones(len(pts), dtype=bool)
    sizes = []
    for S in hitting_sets(pts, flags, max_size=3):
        sizes.append(len(S))
        assert all(any(pt[i] == 0 for i in S) for pt in pts)
        if len(sizes) > 20:
            break
    assert sizes == sorted(sizes)


def test_product_certificate_small():
    ring = PolyRing(["x", "y", "z"], PrimeField(P))
    x, y, z = ring.gens()
    a = [x * z, y * z]
    Ga = groebner_basis(to_pairs(a), 3, P, maxdeg=4)
    pts = np.array([[0, 0, 1]])
    certs = certify_product(to_pairs([x + y, y * y]), Ga, pts)
    assert [c.normal_form_zero for c in certs] == [True, True]
    # (x + y) z and y^2 z lie in a; the empty multiplier does not
    assert [c.multiplier for c in certs] == [(2,), (2,)]
    assert [c.degree for c in certs] == [2, 3]
