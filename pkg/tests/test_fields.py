from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from goepel.polyring import univariate as U
from goepel.polyring.fields import QQ, ExtensionField, PrimeField, is_prime, rank, rref_mod_p

P = 557
residues = st.integers(min_value=0, max_value=P - 1)
nonzero = st.integers(min_value=1, max_value=P - 1)


@given(nonzero)
def test_prime_field_inverse(a):
    F = PrimeField(P)
    assert a * F.inv(a) % P == 1


def test_prime_field_rejects_composite():
    with pytest.raises(ValueError):
        PrimeField(561)
    assert is_prime(557) and is_prime(1009) and not is_prime(1)


def test_fraction_conversion():
    F = PrimeField(P)
    assert F.convert(Fraction(1, 2)) * 2 % P == 1
    with pytest.raises(ZeroDivisionError):
        F.convert(Fraction(1, P))


# F_557^3; t^3 + t + 5 has no root mod 557 (checked by brute force), so it is irreducible
K3 = ExtensionField(P, [5, 1, 0, 1])
elements = st.lists(residues, min_size=3, max_size=3).map(K3)


@given(elements, elements, elements)
def test_extension_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == K3.zero()


@given(elements)
def test_extension_inverse_and_frobenius(a):
    if not a.is_zero():
        assert a * a.inverse() == K3.one()
    x = a
    for _ in range(K3.k):
        x = x.frobenius()
    assert x == a
    assert a ** (P ** 3) == a


def test_extension_rejects_reducible():
    with pytest.raises(ValueError):
        ExtensionField(P, [0, 0, 1])


@settings(max_examples=40)
@given(st.lists(st.lists(st.integers(-5, 5), min_size=4, max_size=4), min_size=1, max_size=5))
def test_rank_mod_p_matches_rationals(rows):
    # small integer matrices have the same rank over Q and mod 557 unless a minor is divisible by 557
    A = np.array(rows, dtype=np.int64)
    r_q = rank(rows, QQ)
    r_p = len(rref_mod_p(A % P, P)[1])
    assert r_p <= r_q
    if r_q == min(A.shape):
        assert r_p in (r_q, r_q - 1)


def test_rref_is_reduced():
    rng = np.random.default_rng(3)
    A = rng.integers(0, P, (6, 9))
    A[4] = (A[0] + 3 * A[1]) % P
    R, piv = rref_mod_p(A, P)
    assert len(piv) == 5
    assert np.array_equal(R[:, piv], np.eye(5, dtype=np.int64))


# univariate polynomials over F_p

polys = st.lists(residues, min_size=1, max_size=12).map(lambda c: U.poly(c, P))


@given(polys, polys)
def test_division_identity(a, b):
    if U.degree(b) < 0:
        return
    q, r = U.divmod_(a, b, P)
    assert U.degree(r) < U.degree(b)
    assert np.array_equal(U.trim(U.add(U.mul(q, b, P), r, P)), U.trim(a))


@given(polys, polys)
def test_xgcd_bezout(a, b):
    g, s, t = U.xgcd(a, b, P)
    lhs = U.add(U.mul(s, a, P), U.mul(t, b, P), P)
    assert np.array_equal(U.trim(lhs), U.trim(g))


def _product(fs):
    out = U.poly([1], P)
    for f in fs:
        out = U.mul(out, f, P)
    return out


def test_distinct_degree_on_known_product():
    rng = np.random.default_rng(5)
    # random irreducibles of degrees 1, 2, 2, 5
    fs = []
    for d in (1, 2, 2, 5):
        while True:
            f = U.poly(list(rng.integers(0, P, d)) + [1], P)
            if U.is_irreducible(f, P) and not any(np.array_equal(f, g) for g in fs):
                fs.append(f)
                break
    F = _product(fs)
    assert U.is_squarefree(F, P)
    assert sorted(U.ddf_degrees(F, P)) == [1, 2, 2, 5]
    factors = U.factor_squarefree(F, P, np.random.default_rng(0))
    assert sorted(U.degree(f) for f in factors) == [1, 2, 2, 5]
    assert np.array_equal(U.monic(_product(factors), P), U.monic(F, P))


def test_squarefree_detection():
    f = U.poly([1, 1], P)
    assert not U.is_squarefree(U.mul(f, f, P), P)


@given(polys, residues)
def test_evaluate_matches_horner(a, x):
    expected = 0
    for c in U.trim(a)[::-1]:
        expected = (expected * x + int(c)) % P
    assert U.evaluate(a, x, P) == expected


def test_irreducibility_agrees_with_root_search():
    for c in range(2, 12):
        has_root = any((x ** 3 + x + c) % P == 0 for x in range(P))
        assert U.is_irreducible(U.poly([c, 1, 0, 1], P), P) == (not has_root)
