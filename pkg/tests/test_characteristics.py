import itertools
from collections import Counter

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from goepel import characteristics as ch


@given(st.integers(1, 3), st.data())
def test_pack_unpack_roundtrip(g, data):
    m = data.draw(st.integers(0, (1 << 2 * g) - 1))
    assert ch.pack(ch.unpack(m, g)) == m


@given(st.integers(1, 3), st.data())
def test_pairing_is_symmetric_and_bilinear(g, data):
    top = (1 << 2 * g) - 1
    x, y, z = (data.draw(st.integers(0, top)) for _ in range(3))
    assert ch.pairing(x, y, g) == ch.pairing(y, x, g)
    assert ch.pairing(x ^ y, z, g) == (ch.pairing(x, z, g) + ch.pairing(y, z, g)) % 2
    assert ch.pairing(x, x, g) == 0


@pytest.mark.parametrize("g", [1, 2, 3])
def test_even_table(g):
    table = ch.even_characteristics(g)
    brute = [m for m in ch.all_characteristics(g)
             if sum(a * b for a, b in zip(ch.unpack(m, g)[:g], ch.unpack(m, g)[g:])) % 2 == 0]
    assert len(table) == len(set(table)) == len(brute) == 2 ** (g - 1) * (2 ** g + 1)
    assert set(table) == set(brute)


@pytest.mark.parametrize("g,count", [(1, 3), (2, 15), (3, 135)])
def test_gopel_groups(g, count):
    groups = ch.enumerate_gopel_groups(g)
    assert len(groups) == count == ch.gopel_count(g)
    assert len({G.elements for G in groups}) == count
    for G in groups:
        assert len(G.elements) == 2 ** g and 0 in G.elements
        assert ch.is_isotropic(G.elements, g)
        assert all(ch.is_even(m, g) for m in G.even_coset)
        # the even coset is the only fully even translate
        shifts = [s for s in ch.all_characteristics(g) if all(ch.is_even(s ^ x, g) for x in G.elements)]
        assert {frozenset(s ^ x for x in G.elements) for s in shifts} == {G.even_coset}
        assert ch.coset_congruences(G)


def test_even_characteristics_are_covered_uniformly():
    # 135 cosets of size 8 over 36 characteristics: each lies in 30 of them
    counts = Counter(m for G in ch.enumerate_gopel_groups(3) for m in G.even_coset)
    assert set(counts.values()) == {30}


def test_subspaces_are_maximal():
    g = 2
    for G in ch.enumerate_gopel_groups(g):
        for v in ch.all_characteristics(g):
            if v not in G.elements:
                assert not ch.is_isotropic(set(G.elements) | {v}, g)


@pytest.mark.parametrize("g", [1, 2, 3])
def test_generators_are_symplectic_and_act_on_groups(g):
    groups = ch.enumerate_gopel_groups(g)
    evens = set(ch.even_characteristics(g))
    for M in ch.standard_generators(g):
        assert ch.is_symplectic(M.M)
        perm = M.permutation()
        assert sorted(perm.tolist()) == list(range(1 << 2 * g))
        assert {int(perm[m]) for m in evens} == evens
        cp = ch.coset_permutation(M)
        assert sorted(cp.tolist()) == list(range(len(groups)))


@pytest.mark.parametrize("g,order", [(1, 6), (2, 720)])
def test_generated_group_order(g, order):
    # Sp(2, F_2) = S_3 and Sp(4, F_2) = S_6 act faithfully on characteristics
    assert len(ch.group_closure(ch.standard_generators(g))) == order


def test_modular_action_preserves_pairing_of_differences():
    g = 2
    for M in ch.standard_generators(g):
        for x, y in itertools.combinations(range(16), 2):
            assert ch.pairing(M.linear_part(x), M.linear_part(y), g) == ch.pairing(x, y, g)


def test_non_symplectic_rejected():
    with pytest.raises(ValueError):
        ch.SymplecticElement(np.array([[1, 1], [1, 1]]))


def test_characteristic_object():
    c = ch.Characteristic.from_vector((1, 1, 0, 1, 1, 0))
    assert c.genus == 3 and c.a == (1, 1, 0) and c.b == (1, 1, 0)
    assert c.is_even() == (((1 * 1 + 1 * 1 + 0) % 2) == 0)
    assert c.index() == 18
