import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from goepel import characteristics as ch
from goepel import theta as th


def point(Z, precision=1e-15):
    return th.SiegelPoint(np.array(Z, dtype=complex), precision)


def test_value_at_i_matches_closed_form():
    # theta_00(i) = pi^(1/4) / Gamma(3/4)
    closed = mpmath.pi ** 0.25 / mpmath.gamma(0.75)
    assert abs(closed - mpmath.mpf("1.0864348112")) < 1e-10
    P = point([[1j]])
    assert abs(th.theta_nullwert(0, P) - complex(closed)) < 1e-13
    # the other two even constants at i are 2^(-1/4) theta_00(i)
    v = th.theta_vector(P)
    assert np.allclose(v[1:], 2 ** -0.25 * float(closed), atol=1e-13)


def test_high_precision_agrees_with_double():
    P = point([[0.1 + 1.1j]], 1e-25)
    hi = th.theta_nullwert(ch.pack((1, 0)), P)
    lo = th.theta_nullwert(ch.pack((1, 0)), P, precision=1e-15)
    assert isinstance(hi, mpmath.mpc)
    assert abs(complex(hi) - lo) < 1e-13


def test_odd_characteristic_vanishes():
    P = th.random_siegel_point(2, np.random.default_rng(0))
    odd = [m for m in ch.all_characteristics(2) if not ch.is_even(m, 2)]
    assert len(odd) == 6
    assert all(th.theta_nullwert(m, P) == 0 for m in odd)


@settings(max_examples=15, deadline=None)
@given(st.floats(-0.5, 0.5), st.floats(0.8, 2.0), st.floats(-0.5, 0.5), st.floats(0.8, 2.0))
def test_diagonal_point_factorizes(x1, y1, x2, y2):
    z1, z2 = complex(x1, y1), complex(x2, y2)
    v2 = th.theta_vector(point([[z1, 0], [0, z2]]))
    t1 = {m: th.theta_nullwert(m, point([[z1]])) for m in range(4)}
    t2 = {m: th.theta_nullwert(m, point([[z2]])) for m in range(4)}
    for k, m in enumerate(ch.even_characteristics(2)):
        a1, a2, b1, b2 = ch.unpack(m, 2)
        expected = t1[ch.pack((a1, b1))] * t2[ch.pack((a2, b2))]
        assert abs(v2[k] - expected) < 1e-12


@settings(max_examples=20, deadline=None)
@given(st.floats(-0.5, 0.5), st.floats(0.6, 3.0))
def test_jacobi_identity(x, y):
    v = th.theta_vector(point([[complex(x, y)]]))
    assert abs(v[0] ** 4 - v[1] ** 4 - v[2] ** 4) < 1e-12 * abs(v[0]) ** 4


def test_degenerate_limit():
    # as Im Z grows, theta[a; b] -> 1 for a = 0 and -> 0 otherwise, so the Goepel form of the
    # group whose even coset is {a = 0} tends to 1 and every other one to 0
    # (leading term 2^w exp(-pi t w / 4) for w nonzero entries of a)
    g, t = 3, 20.0
    P = point(t * 1j * np.eye(g))
    v = th.theta_vector(P)
    for k, m in enumerate(ch.even_characteristics(g)):
        a = ch.unpack(m, g)[:g]
        w = sum(a)
        b = ch.unpack(m, g)[g:]
        lead = np.prod([2 * np.cos(np.pi * bi / 2) if ai else 1 for ai, bi in zip(a, b)])
        expected = lead * np.exp(-np.pi * t * w / 4) if w else 1.0
        assert abs(v[k] - expected) < 1e-8 * max(abs(expected), 1e-12) + 1e-25
    S = th.make_sample(P)
    forms = th.gopel_forms(S)
    standard = [i for i, G in enumerate(ch.enumerate_gopel_groups(g))
                if all(not any(ch.unpack(m, g)[:g]) for m in G.even_coset)]
    assert len(standard) == 1
    assert abs(forms[standard[0]] - 1) < 1e-10
    others = np.delete(np.abs(forms), standard[0])
    assert others.max() < 1e-10


def test_tail_bound_decreases():
    b = [th.tail_bound(1.0, 3, N) for N in range(1, 8)]
    assert all(x > y for x, y in zip(b, b[1:]))
    assert th.truncation_radius(point([[1j]]), 1e-15) <= 6


def test_random_point_is_valid():
    P = th.random_siegel_point(3, np.random.default_rng(1))
    assert np.allclose(P.Z, P.Z.T) and P.min_eigenvalue > 0
    with pytest.raises(ValueError):
        point([[-1j]])


def test_equilibration_keeps_kernel():
    rng = np.random.default_rng(2)
    V = rng.normal(size=(12, 5)) * np.array([1e-6, 1, 1e3, 1, 1])
    V[:, 4] = 2 * V[:, 0] - V[:, 1]
    W, scale = th._equilibrate(V)
    _, s, Vh = np.linalg.svd(W)
    k = Vh[-1] * scale
    assert np.abs(V @ k).max() < 1e-10 * np.abs(V).max() * np.abs(k).max()


def test_relation_search_genus1():
    # the Jacobi quartic as a linear relation among the fourth powers
    rng = np.random.default_rng(4)
    S = [th.make_sample(th.random_siegel_point(1, rng)) for _ in range(10)]
    fresh = [th.make_sample(th.random_siegel_point(1, rng)) for _ in range(4)]
    rel = th.find_relations(lambda s: s.theta ** 4, 1, S, fresh)
    assert rel.dimension == 1
    row = rel.relations[0] * np.sign(rel.relations[0][0])
    assert row.tolist() == [1, -1, -1]


def test_relation_search_rejects_too_few_samples():
    rng = np.random.default_rng(4)
    S = [th.make_sample(th.random_siegel_point(1, rng)) for _ in range(3)]
    with pytest.raises(ValueError):
        th.find_relations(lambda s: s.theta, 2, S, S)
