"""Coefficient domains: rationals, prime fields and their extensions."""
from __future__ import annotations

from fractions import Fraction

import numpy as np

from . import univariate as U

DEFAULT_PRIME = 557


class Rationals:
    """Arbitrary-precision rationals (fractions.Fraction, always normalized)."""

    characteristic = 0

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("QQ")

    def convert(self, x):
        return Fraction(x)

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(x)


QQ = Rationals()


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


class PrimeField:
    """F_p with elements represented by ints in [0, p)."""

    def __init__(self, p: int = DEFAULT_PRIME):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def convert(self, x) -> int:
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError("denominator vanishes mod p")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def zero(self):
        return 0

    def one(self):
        return 1

    def inv(self, x) -> int:
        x %= self.p
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, self.p - 2, self.p)


class ExtensionField:
    """F_{p^k} = F_p[t]/(f) for an irreducible f (checked by distinct-degree factorization)."""

    def __init__(self, p: int, modulus, check: bool = True):
        self.p = p
        self.characteristic = p
        f = U.monic(U.poly(modulus, p), p)
        self.k = U.degree(f)
        if self.k < 1:
            raise ValueError("modulus must have positive degree")
        if check and not U.is_irreducible(f, p):
            raise ValueError("modulus is reducible")
        self.modulus = f

    def __repr__(self):
        return f"GF({self.p}^{self.k})"

    def __call__(self, coeffs) -> "ExtensionElement":
        return ExtensionElement(self, U.rem(U.poly(coeffs, self.p), self.modulus, self.p))

    def convert(self, x) -> "ExtensionElement":
        if isinstance(x, ExtensionElement):
            return x
        if isinstance(x, Fraction):
            x = PrimeField(self.p).convert(x)
        return self([int(x) % self.p])

    def zero(self):
        return self([0])

    def one(self):
        return self([1])

    def gen(self):
        return self([0, 1])

    def inv(self, x):
        return x.inverse()


class ExtensionElement:
    __slots__ = ("field", "c")

    def __init__(self, field: ExtensionField, c: np.ndarray):
        self.field = field
        self.c = c

    def _lift(self, other):
        if isinstance(other, ExtensionElement):
            return other
        return self.field.convert(other)

    def __add__(self, other):
        o = self._lift(other)
        return ExtensionElement(self.field, U.add(self.c, o.c, self.field.p))

    __radd__ = __add__

    def __neg__(self):
        return ExtensionElement(self.field, U.neg(self.c, self.field.p))

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        F = self.field
        return ExtensionElement(F, U.mulmod(self.c, o.c, F.modulus, F.p))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        F = self.field
        if e < 0:
            return self.inverse() ** (-e)
        return ExtensionElement(F, U.powmod(self.c, e, F.modulus, F.p))

    def inverse(self):
        F = self.field
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return ExtensionElement(F, U.invmod(self.c, F.modulus, F.p))

    def __truediv__(self, other):
        return self * self._lift(other).inverse()

    def is_zero(self) -> bool:
        return len(self.c) == 0

    def __eq__(self, other):
        o = self._lift(other)
        return np.array_equal(self.c, o.c)

    def __hash__(self):
        return hash(tuple(self.c))

    def frobenius(self):
        return self ** self.field.p

    def __repr__(self):
        return f"{self.field}({list(self.c)})"


def rref(matrix, field) -> tuple[list[list], list[int]]:
    """Reduced row echelon form (nonzero rows) and pivot columns over an exact field."""
    M = [[field.convert(x) for x in row] for row in matrix]
    is_zero = (lambda x: x.is_zero()) if isinstance(field, ExtensionField) else (lambda x: x == 0)
    rows, r = len(M), 0
    cols = len(M[0]) if rows else 0
    piv = []
    for c in range(cols):
        if r == rows:
            break
        k = next((i for i in range(r, rows) if not is_zero(M[i][c])), None)
        if k is None:
            continue
        M[r], M[k] = M[k], M[r]
        inv = field.inv(M[r][c])
        M[r] = [x * inv for x in M[r]]
        for i in range(rows):
            if i != r and not is_zero(M[i][c]):
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        piv.append(c)
        r += 1
    return M[:r], piv


def rank(matrix, field) -> int:
    """Rank by Gaussian elimination; entries are field elements (or ints for F_p)."""
    if isinstance(field, PrimeField):
        A = np.array([[int(x) for x in row] for row in matrix], dtype=np.int64).reshape(len(matrix), -1)
        return rank_mod_p(A % field.p, field.p)
    return len(rref(matrix, field)[1])


def rank_mod_p(A: np.ndarray, p: int) -> int:
    return len(rref_mod_p(A, p)[1])


def rref_mod_p(A: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form mod p (p < 2^31) and pivot columns."""
    M = np.array(A, dtype=np.int64) % p
    rows, cols = M.shape
    r = 0
    piv = []
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(M[r:, c])[0]
        if len(nz) == 0:
            continue
        k = r + nz[0]
        if k != r:
            M[[r, k]] = M[[k, r]]
        M[r] = M[r] * pow(int(M[r, c]), p - 2, p) % p
        col = M[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if len(nzr):
            M[nzr] = (M[nzr] - np.outer(col[nzr], M[r])) % p
        piv.append(c)
        r += 1
    return M[:r], piv
