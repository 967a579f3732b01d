"""Sparse multivariate polynomials: exponent tuple -> nonzero coefficient."""
from __future__ import annotations

from typing import Callable, Mapping, Sequence

from .fields import QQ, PrimeField


def grevlex_key(e: tuple[int, ...]):
    return (sum(e), tuple(-x for x in reversed(e)))


def lex_key(e: tuple[int, ...]):
    return e


def block_key(split: int) -> Callable:
    """Elimination order: grevlex on the first `split` variables, ties by grevlex on the rest."""
    def key(e):
        return (grevlex_key(e[:split]), grevlex_key(e[split:]))
    return key


ORDERS = {"grevlex": grevlex_key, "lex": lex_key}


class PolyRing:
    """Polynomial ring over a coefficient domain with named variables and a term order."""

    def __init__(self, names: Sequence[str], domain=QQ, order="grevlex"):
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate variable names")
        self.n = len(self.names)
        self.domain = domain
        if isinstance(order, str):
            self.order_name = order
            self.key = ORDERS[order]
        else:
            self.order_name, self.key = order
        self._index = {v: i for i, v in enumerate(self.names)}

    def __repr__(self):
        return f"PolyRing({self.n} vars over {self.domain}, {self.order_name})"

    def __eq__(self, other):
        return (isinstance(other, PolyRing) and self.names == other.names
                and self.domain == other.domain and self.order_name == other.order_name)

    def __hash__(self):
        return hash((self.names, self.domain, self.order_name))

    def index(self, name: str) -> int:
        return self._index[name]

    def with_domain(self, domain) -> "PolyRing":
        return PolyRing(self.names, domain, (self.order_name, self.key))

    def with_order(self, order) -> "PolyRing":
        return PolyRing(self.names, self.domain, order)

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return self.constant(1)

    def constant(self, c) -> "Poly":
        return Poly(self, {(0,) * self.n: c})

    def gen(self, i) -> "Poly":
        if isinstance(i, str):
            i = self._index[i]
        e = [0] * self.n
        e[i] = 1
        return Poly(self, {tuple(e): 1})

    def gens(self) -> list["Poly"]:
        return [self.gen(i) for i in range(self.n)]

    def monomial(self, exps, coeff=1) -> "Poly":
        return Poly(self, {tuple(exps): coeff})

    def from_dict(self, terms: Mapping) -> "Poly":
        return Poly(self, dict(terms))

    def from_linear(self, coeffs: Sequence) -> "Poly":
        terms = {}
        for i, c in enumerate(coeffs):
            if c:
                e = [0] * self.n
                e[i] = 1
                terms[tuple(e)] = c
        return Poly(self, terms)


class Poly:
    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: Mapping):
        self.ring = ring
        conv = ring.domain.convert
        out = {}
        for e, c in terms.items():
            c = conv(c)
            if c != 0:
                if len(e) != ring.n:
                    raise ValueError("exponent length does not match ring")
                out[tuple(e)] = c
        self.terms = out

    @classmethod
    def _raw(cls, ring, terms):
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.terms = terms
        return obj

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise ValueError("polynomials live in different rings")
            return other
        return self.ring.constant(other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if isinstance(self.ring.domain, PrimeField):
                v %= self.ring.domain.p
            if v == 0:
                out.pop(e, None)
            else:
                out[e] = v
        return Poly._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Poly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = self.ring.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def __eq__(self, other):
        if not isinstance(other, Poly):
            other = self.ring.constant(other)
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def sorted_terms(self) -> list[tuple[tuple[int, ...], object]]:
        """Terms in descending term order."""
        return sorted(self.terms.items(), key=lambda t: self.ring.key(t[0]), reverse=True)

    def leading_monomial(self) -> tuple[int, ...]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self.terms, key=self.ring.key)

    def leading_coefficient(self):
        return self.terms[self.leading_monomial()]

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def monic(self) -> "Poly":
        if not self.terms:
            return self
        inv = self.ring.domain.inv(self.leading_coefficient())
        return self * inv

    def scale_monomial(self, exps, coeff=1) -> "Poly":
        return Poly(self.ring, {tuple(a + b for a, b in zip(e, exps)): c * coeff
                                for e, c in self.terms.items()})

    def evaluate(self, point: Sequence):
        """Direct term sum; point entries may be ints, Fractions or field elements."""
        if len(point) != self.ring.n:
            raise ValueError("point has wrong length")
        total = 0
        for e, c in self.terms.items():
            t = c
            for x, k in zip(point, e):
                if k:
                    t = t * x ** k
            total = total + t
        if isinstance(self.ring.domain, PrimeField) and isinstance(total, int):
            total %= self.ring.domain.p
        return total

    def derivative(self, i: int) -> "Poly":
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                out[tuple(f)] = c * e[i]
        return Poly(self.ring, out)

    def change_ring(self, ring: PolyRing) -> "Poly":
        """Same exponents, coefficients converted (e.g. reduction mod p)."""
        if ring.n != self.ring.n:
            raise ValueError("variable count differs")
        return Poly(ring, self.terms)

    def variables(self) -> set[int]:
        return {i for e in self.terms for i, k in enumerate(e) if k}

    def __repr__(self):
        from .textio import format_poly
        return format_poly(self)


def ring_homomorphism_apply(images: Mapping[int, Poly], f: Poly, target: PolyRing) -> Poly:
    """Image of f under x_i -> images[i]; every variable of f needs an image."""
    missing = f.variables() - set(images)
    if missing:
        raise KeyError(f"no image for variables {sorted(f.ring.names[i] for i in missing)}")
    out = target.zero()
    cache: dict = {}
    for e, c in f.terms.items():
        t = target.constant(c)
        for i, k in enumerate(e):
            if k:
                key = (i, k)
                if key not in cache:
                    cache[key] = images[i] ** k
                t = t * cache[key]
        out = out + t
    return out
