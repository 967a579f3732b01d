"""Dense univariate polynomials over F_p as int64 arrays, lowest degree first.

The zero polynomial is the empty array.  Primes must stay below 2^31 so that
products of residues fit in int64.
"""
from __future__ import annotations

import numpy as np


def poly(coeffs, p: int) -> np.ndarray:
    return trim(np.asarray(coeffs, dtype=np.int64) % p)


def trim(a: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    nz = np.nonzero(a)[0]
    return a[: nz[-1] + 1] if len(nz) else a[:0]


def degree(a: np.ndarray) -> int:
    return len(a) - 1


def monic(a: np.ndarray, p: int) -> np.ndarray:
    if not len(a):
        return a
    return a * pow(int(a[-1]), p - 2, p) % p


def add(a, b, p):
    n = max(len(a), len(b))
    out = np.zeros(n, dtype=np.int64)
    out[: len(a)] += a
    out[: len(b)] += b
    return trim(out % p)


def neg(a, p):
    return trim((-a) % p)


def sub(a, b, p):
    return add(a, neg(b, p), p)


def mul(a, b, p):
    if not len(a) or not len(b):
        return np.zeros(0, dtype=np.int64)
    if p * p * min(len(a), len(b)) < 2 ** 62:
        return trim(np.convolve(a, b) % p)
    # split into 16-bit halves to keep convolution sums exact
    lo_a, hi_a = a & 0xFFFF, a >> 16
    lo_b, hi_b = b & 0xFFFF, b >> 16
    ll = np.convolve(lo_a, lo_b) % p
    lh = (np.convolve(lo_a, hi_b) + np.convolve(hi_a, lo_b)) % p
    hh = np.convolve(hi_a, hi_b) % p
    shift = (1 << 16) % p
    return trim((ll + lh * shift % p + hh * shift % p * shift % p) % p)


def divmod_(a, b, p):
    b = trim(b)
    if not len(b):
        raise ZeroDivisionError("division by the zero polynomial")
    a = trim(a).copy()
    db = len(b) - 1
    inv = pow(int(b[-1]), p - 2, p)
    if len(a) - 1 < db:
        return np.zeros(0, dtype=np.int64), a
    q = np.zeros(len(a) - db, dtype=np.int64)
    for s in range(len(a) - 1 - db, -1, -1):
        c = a[s + db] * inv % p
        if c:
            q[s] = c
            a[s: s + db + 1] = (a[s: s + db + 1] - c * b) % p
    return trim(q), trim(a[:db])


def rem(a, b, p):
    return divmod_(a, b, p)[1]


def quo(a, b, p):
    return divmod_(a, b, p)[0]


def mulmod(a, b, m, p):
    return rem(mul(a, b, p), m, p)


def powmod(a, e: int, m, p):
    out = np.array([1], dtype=np.int64)
    base = rem(a, m, p)
    while e:
        if e & 1:
            out = mulmod(out, base, m, p)
        e >>= 1
        if e:
            base = mulmod(base, base, m, p)
    return rem(out, m, p)


def gcd(a, b, p):
    a, b = trim(a), trim(b)
    while len(b):
        a, b = b, rem(a, b, p)
    return monic(a, p)


def xgcd(a, b, p):
    """Returns (g, s, t) with s a + t b = g monic."""
    r0, r1 = trim(a), trim(b)
    s0, s1 = np.array([1], dtype=np.int64), np.zeros(0, dtype=np.int64)
    t0, t1 = np.zeros(0, dtype=np.int64), np.array([1], dtype=np.int64)
    while len(r1):
        q, r = divmod_(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1, p), p)
        t0, t1 = t1, sub(t0, mul(q, t1, p), p)
    if not len(r0):
        return r0, s0, t0
    inv = pow(int(r0[-1]), p - 2, p)
    return r0 * inv % p, s0 * inv % p, t0 * inv % p


def invmod(a, m, p):
    g, s, _ = xgcd(a, m, p)
    if degree(g) != 0:
        raise ZeroDivisionError("not invertible modulo m")
    return rem(s, m, p)


def derivative(a, p):
    if len(a) <= 1:
        return np.zeros(0, dtype=np.int64)
    return trim(a[1:] * (np.arange(1, len(a)) % p) % p)


def evaluate(a, x: int, p: int) -> int:
    out = 0
    for c in a[::-1]:
        out = (out * x + int(c)) % p
    return out


def pth_root(a, p):
    """For a(x) = b(x^p), return b."""
    return trim(a[::p].copy())


def squarefree_part(f, p):
    """Product of the distinct monic irreducible factors of f."""
    f = monic(poly(f, p), p)
    if not len(f):
        raise ValueError("zero polynomial")
    if degree(f) <= 0:
        return f
    d = derivative(f, p)
    if not len(d):
        return squarefree_part(pth_root(f, p), p)
    g = gcd(f, d, p)
    w = quo(f, g, p)
    # strip the factors of w from g; what is left has multiplicities divisible by p
    while True:
        h = gcd(g, w, p)
        if degree(h) <= 0:
            break
        g = quo(g, h, p)
    if degree(g) > 0:
        w = mul(w, squarefree_part(pth_root(g, p), p), p)
    return monic(w, p)


def is_squarefree(f, p) -> bool:
    f = poly(f, p)
    return degree(squarefree_part(f, p)) == degree(f)


def distinct_degree(f, p) -> list[tuple[int, np.ndarray]]:
    """Split a squarefree f into (d, product of its irreducible factors of degree d)."""
    f = monic(poly(f, p), p)
    if not len(f):
        raise ValueError("zero polynomial")
    out = []
    rest = f
    h = np.array([0, 1], dtype=np.int64)
    x = np.array([0, 1], dtype=np.int64)
    d = 0
    while degree(rest) > 0:
        d += 1
        if 2 * d > degree(rest):
            out.append((degree(rest), rest))
            break
        h = powmod(h, p, rest, p)
        g = gcd(rest, sub(h, x, p), p)
        if degree(g) > 0:
            out.append((d, g))
            rest = quo(rest, g, p)
            h = rem(h, rest, p)
    return out


def ddf_degrees(f, p) -> list[int]:
    """Degrees of the irreducible factors of a squarefree f, with multiplicity."""
    degs = []
    for d, g in distinct_degree(f, p):
        degs += [d] * (degree(g) // d)
    return sorted(degs)


def is_irreducible(f, p) -> bool:
    f = poly(f, p)
    if degree(f) < 1:
        return False
    if not is_squarefree(f, p):
        return False
    return ddf_degrees(f, p) == [degree(f)]


def equal_degree_factors(f, d: int, p: int, rng=None) -> list[np.ndarray]:
    """Monic irreducible factors of f, a product of distinct degree-d irreducibles (p odd)."""
    f = monic(poly(f, p), p)
    n = degree(f)
    if n == d:
        return [f]
    if n % d:
        raise ValueError("degree of f is not a multiple of d")
    rng = rng or np.random.default_rng(0)
    e = (p ** d - 1) // 2
    while True:
        a = poly(rng.integers(0, p, n), p)
        if degree(a) < 1:
            continue
        g = gcd(a, f, p)
        if 0 < degree(g) < n:
            break
        b = sub(powmod(a, e, f, p), np.array([1], dtype=np.int64), p)
        g = gcd(b, f, p)
        if 0 < degree(g) < n:
            break
    return (equal_degree_factors(g, d, p, rng) + equal_degree_factors(quo(f, g, p), d, p, rng))


def factor_squarefree(f, p: int, rng=None) -> list[np.ndarray]:
    """All monic irreducible factors of a squarefree f, sorted by degree."""
    out = []
    for d, g in distinct_degree(f, p):
        out += equal_degree_factors(g, d, p, rng)
    return sorted(out, key=lambda h: (degree(h), h.tolist()))
