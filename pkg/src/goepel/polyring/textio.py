"""Plain-text polynomial format.

One polynomial per line, terms like ``-3*Y1^2*Y4`` joined by ``+``/``-``,
``#`` starts a comment.  Printing is canonical: terms in descending term
order, coefficients as integers (residues in [0, p) over F_p).
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable

from .fields import PrimeField
from .sparse import Poly, PolyRing

_TERM = re.compile(r"([+-])")
_FACTOR = re.compile(r"^([A-Za-z_][A-Za-z_0-9]*)(?:\^(\d+))?$")
_NUMBER = re.compile(r"^\d+(?:/\d+)?$")


def parse_poly(text: str, ring: PolyRing) -> Poly:
    s = text.split("#", 1)[0].replace(" ", "").replace("\t", "")
    if not s:
        raise ValueError("empty polynomial")
    if s[0] not in "+-":
        s = "+" + s
    parts = _TERM.split(s)[1:]
    if len(parts) % 2:
        raise ValueError(f"malformed polynomial: {text!r}")
    terms: dict = {}
    for sign, body in zip(parts[::2], parts[1::2]):
        if not body:
            raise ValueError(f"dangling sign in {text!r}")
        coeff = Fraction(1)
        exps = [0] * ring.n
        for factor in body.split("*"):
            if _NUMBER.match(factor):
                coeff *= Fraction(factor)
                continue
            m = _FACTOR.match(factor)
            if not m:
                raise ValueError(f"bad factor {factor!r}")
            name, power = m.group(1), int(m.group(2) or 1)
            if name not in ring._index:
                raise ValueError(f"unknown variable {name}")
            exps[ring.index(name)] += power
        if sign == "-":
            coeff = -coeff
        e = tuple(exps)
        terms[e] = terms.get(e, 0) + coeff
    return Poly(ring, terms)


def parse_polys(text: str, ring: PolyRing) -> list[Poly]:
    out = []
    for line in text.splitlines():
        if line.split("#", 1)[0].strip():
            out.append(parse_poly(line, ring))
    return out


def _coeff_str(c, ring: PolyRing) -> str:
    if isinstance(ring.domain, PrimeField):
        return str(int(c) % ring.domain.p)
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_poly(f: Poly) -> str:
    ring = f.ring
    if f.is_zero():
        return "0"
    pieces = []
    for e, c in f.sorted_terms():
        neg = False
        if not isinstance(ring.domain, PrimeField) and Fraction(c) < 0:
            neg, c = True, -c
        mon = [f"{ring.names[i]}^{k}" if k > 1 else ring.names[i] for i, k in enumerate(e) if k]
        cs = _coeff_str(c, ring)
        if mon and cs == "1":
            body = "*".join(mon)
        else:
            body = "*".join([cs] + mon)
        pieces.append(("-" if neg else "+", body))
    first_sign, first = pieces[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


def format_polys(polys: Iterable[Poly], header: str | None = None) -> str:
    lines = []
    if header:
        lines += [f"# {h}" for h in header.splitlines()]
    lines += [format_poly(f) for f in polys]
    return "\n".join(lines) + "\n"


def variable_names(prefix: str, count: int) -> list[str]:
    return [f"{prefix}{i}" for i in range(1, count + 1)]
