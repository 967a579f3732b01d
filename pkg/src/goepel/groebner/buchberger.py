"""Buchberger's algorithm on sparse polynomials, for small ideals over Q or F_p.

Works with any term order of the ring (including block orders for
elimination); used for colon ideals of small examples and as an
independent check of the F4 engine.
"""
from __future__ import annotations

from ..polyring.sparse import Poly, PolyRing


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def reduce(f: Poly, G: list[Poly]) -> Poly:
    """Full normal form of f modulo the list G (assumed monic)."""
    ring = f.ring
    key = ring.key
    leads = [(g.leading_monomial(), g) for g in G if g]
    rem: dict = {}
    f = Poly._raw(ring, dict(f.terms))
    while f.terms:
        m = max(f.terms, key=key)
        c = f.terms[m]
        for lm, g in leads:
            if _divides(lm, m):
                f = f - g.scale_monomial(_sub(m, lm), c * ring.domain.inv(g.terms[lm]))
                break
        else:
            rem[m] = c
            del f.terms[m]
    return Poly._raw(ring, rem)


def spoly(f: Poly, g: Poly) -> Poly:
    ring = f.ring
    lf, lg = f.leading_monomial(), g.leading_monomial()
    L = _lcm(lf, lg)
    inv = ring.domain.inv
    return (f.scale_monomial(_sub(L, lf), inv(f.terms[lf]))
            - g.scale_monomial(_sub(L, lg), inv(g.terms[lg])))


def groebner(F: list[Poly], max_pairs: int = 200_000) -> list[Poly]:
    """Reduced Groebner basis of the ideal generated by F."""
    G: list[Poly] = []
    for f in F:
        if f:
            G.append(f.monic())
    pairs = [(i, j) for j in range(len(G)) for i in range(j)]
    done = 0
    while pairs:
        # sugar-free normal strategy: smallest lcm first
        key = G[0].ring.key if G else None
        pairs.sort(key=lambda ij: key(_lcm(G[ij[0]].leading_monomial(), G[ij[1]].leading_monomial())))
        i, j = pairs.pop(0)
        done += 1
        if done > max_pairs:
            raise RuntimeError("pair budget exhausted")
        li, lj = G[i].leading_monomial(), G[j].leading_monomial()
        if all(min(a, b) == 0 for a, b in zip(li, lj)):
            continue
        L = _lcm(li, lj)
        # chain criterion
        if any(k not in (i, j) and _divides(G[k].leading_monomial(), L)
               and (min(i, k), max(i, k)) not in pairs and (min(j, k), max(j, k)) not in pairs
               for k in range(len(G))):
            continue
        h = reduce(spoly(G[i], G[j]), G)
        if h:
            G.append(h.monic())
            pairs += [(k, len(G) - 1) for k in range(len(G) - 1)]
    return interreduce(G)


def interreduce(G: list[Poly]) -> list[Poly]:
    G = [g.monic() for g in G if g]
    leads = [g.leading_monomial() for g in G]
    keep = []
    for i, g in enumerate(G):
        if any(j != i and _divides(leads[j], leads[i]) and (leads[j] != leads[i] or j < i)
               for j in range(len(G))):
            continue
        keep.append(g)
    out = []
    for i, g in enumerate(keep):
        others = keep[:i] + keep[i + 1:]
        out.append(reduce(g, others).monic())
    key = out[0].ring.key if out else None
    return sorted(out, key=lambda g: key(g.leading_monomial()))


def is_in_ideal(f: Poly, G: list[Poly]) -> bool:
    return not reduce(f, G)


def eliminate(F: list[Poly], keep: int) -> list[Poly]:
    """Generators of (F) intersected with the ring of the last `keep` variables.

    The ring of F must use an elimination order for the leading variables.
    """
    G = groebner(F)
    drop = F[0].ring.n - keep
    return [g for g in G if all(e[:drop] == (0,) * drop for e in g.terms)]


def colon(F: list[Poly], H: list[Poly]) -> list[Poly]:
    """Generators of (F) : (H), via intersections computed with a tag variable.

    (F):(h) = ((F) intersect (h)) / h and (F):(h1,...,hk) is the intersection
    of the single colons.
    """
    ring = F[0].ring
    result: list[Poly] | None = None
    for h in H:
        quotients = [_exact_divide(g, h) for g in _intersect(F, [h], ring)]
        result = quotients if result is None else _intersect(result, quotients, ring)
    return groebner(result or [])


def _tagged_ring(ring: PolyRing) -> PolyRing:
    from ..polyring.sparse import block_key
    names = ("_tag",) + ring.names
    return PolyRing(names, ring.domain, ("block", block_key(1)))


def _lift(f: Poly, tagged: PolyRing, tag_power: int = 0) -> Poly:
    return Poly(tagged, {(tag_power,) + e: c for e, c in f.terms.items()})


def _intersect(F: list[Poly], H: list[Poly], ring: PolyRing) -> list[Poly]:
    """(F) intersect (H) = (t F + (1-t) H) intersect k[x]."""
    tagged = _tagged_ring(ring)
    gens = [_lift(f, tagged, 1) for f in F]
    gens += [_lift(h, tagged, 0) - _lift(h, tagged, 1) for h in H]
    out = []
    for g in eliminate(gens, ring.n):
        out.append(Poly(ring, {e[1:]: c for e, c in g.terms.items()}))
    return out


def _exact_divide(f: Poly, h: Poly) -> Poly:
    """Quotient of f by h, which must divide f exactly."""
    ring = f.ring
    key = ring.key
    q: dict = {}
    rest = Poly._raw(ring, dict(f.terms))
    lh = h.leading_monomial()
    ch = ring.domain.inv(h.terms[lh])
    while rest.terms:
        m = max(rest.terms, key=key)
        if not _divides(lh, m):
            raise ArithmeticError("division is not exact")
        e = _sub(m, lh)
        c = rest.terms[m] * ch
        q[e] = q.get(e, 0) + c
        rest = rest - h.scale_monomial(e, c)
    return Poly(ring, q)
