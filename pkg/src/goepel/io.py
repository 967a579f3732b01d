"""Ideal files and cached Groebner bases.

An ideal file is the plain-text polynomial format with a first comment line
holding a JSON header (variables, prime if any, free-form metadata).
"""
from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from pathlib import Path

import numpy as np

from .groebner.f4 import GradedBasis
from .polyring.fields import QQ, PrimeField
from .polyring.sparse import Poly, PolyRing
from .polyring.textio import format_polys, parse_polys, variable_names


def _ring(names, p: int | None) -> PolyRing:
    return PolyRing(names, PrimeField(p) if p else QQ)


def format_ideal(polys, names=None, p: int | None = None, meta: dict | None = None) -> str:
    n = np.asarray(polys[0][0]).shape[1] if polys else len(names or [])
    names = list(names or variable_names("Y", n))
    ring = _ring(names, p)
    objs = [Poly(ring, {tuple(int(x) for x in e): int(c) for e, c in zip(np.asarray(ex), cf)})
            for ex, cf in polys]
    header = {"variables": names, "prime": p, "count": len(objs), **(meta or {})}
    return format_polys(objs, json.dumps(header, sort_keys=True))


def write_ideal(path, polys, names=None, p: int | None = None, meta: dict | None = None) -> str:
    text = format_ideal(polys, names, p, meta)
    Path(path).write_text(text)
    return hashlib.sha256(text.encode()).hexdigest()


def read_ideal(path) -> tuple[dict, list]:
    """Returns (header, [(exps, coefs)]) with integer coefficients (residues if a prime is set)."""
    text = Path(path).read_text()
    first = text.splitlines()[0] if text else ""
    if not first.startswith("#"):
        raise ValueError("ideal file must start with a JSON header comment")
    header = json.loads(first[1:])
    p = header.get("prime")
    ring = _ring(header["variables"], p)
    out = []
    for f in parse_polys(text, ring):
        terms = f.sorted_terms()
        coefs = []
        for _, c in terms:
            c = Fraction(c)
            if c.denominator != 1:
                raise ValueError("non-integral coefficient in ideal file")
            coefs.append(int(c))
        out.append((np.array([e for e, _ in terms], dtype=np.int8), np.array(coefs, dtype=np.int64)))
    return header, out


def save_basis(path, G: GradedBasis) -> None:
    lens = np.array([len(c) for _, c in G.polys], dtype=np.int64)
    exps = np.vstack([e for e, _ in G.polys]) if G.polys else np.zeros((0, G.n), np.int8)
    coefs = np.concatenate([c for _, c in G.polys]) if G.polys else np.zeros(0, np.int64)
    np.savez_compressed(path, n=G.n, p=G.p, complete=G.complete, maxdeg=-1 if G.maxdeg is None else G.maxdeg,
                        lens=lens, exps=exps, coefs=coefs)


def load_basis(path) -> GradedBasis:
    z = np.load(path)
    ptr = np.concatenate([[0], np.cumsum(z["lens"])])
    polys = [(z["exps"][a:b].copy(), z["coefs"][a:b].copy()) for a, b in zip(ptr[:-1], ptr[1:])]
    maxdeg = int(z["maxdeg"])
    return GradedBasis(int(z["n"]), int(z["p"]), polys, bool(z["complete"]), None if maxdeg < 0 else maxdeg)
