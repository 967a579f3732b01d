"""Hilbert series of monomial ideals (and of ideals via their leading terms)."""
from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np


def minimal_generators(E) -> np.ndarray:
    E = np.asarray(E, dtype=np.int64)
    if len(E) == 0:
        return E
    E = np.unique(E, axis=0)
    E = E[np.argsort(E.sum(axis=1), kind="stable")]
    keep: list[int] = []
    for i in range(len(E)):
        if not keep or not np.any(np.all(E[keep] <= E[i], axis=1)):
            keep.append(i)
    return E[keep]


def _mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _add(a, b):
    out = [0] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] += x
    return out


def _numerator(E: np.ndarray) -> list[int]:
    if len(E) == 0:
        return [1]
    if np.any(E.sum(axis=1) == 0):
        return [0]
    support = (E > 0).sum(axis=1)
    if np.all(support == 1):
        out = [1]
        for row in E:
            d = int(row.sum())
            out = _mul(out, [1] + [0] * (d - 1) + [-1])
        return out
    # pivot on a median power of the variable most used by mixed generators
    mixed = E[support > 1]
    x = int(np.argmax((mixed > 0).sum(axis=0)))
    powers = np.sort(mixed[mixed[:, x] > 0, x])
    e = int(powers[len(powers) // 2])
    pivot = np.zeros(E.shape[1], dtype=np.int64)
    pivot[x] = e
    with_pivot = minimal_generators(np.vstack([E, pivot[None]]))
    colon = E.copy()
    colon[:, x] = np.maximum(colon[:, x] - e, 0)
    colon = minimal_generators(colon)
    return _add(_numerator(with_pivot), [0] * e + _numerator(colon))


def hilbert_numerator(E) -> list[int]:
    """K(t) with HS(R/I) = K(t)/(1-t)^n for the monomial ideal generated by rows of E."""
    out = _numerator(minimal_generators(E))
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


@dataclass(frozen=True)
class HilbertData:
    """HS = h(t) / (1-t)^dim; dim is the Krull dimension of R/I."""

    h: tuple[int, ...]
    dim: int
    nvars: int

    @property
    def degree(self) -> int:
        return sum(self.h)

    @property
    def projective_dimension(self) -> int:
        return self.dim - 1

    def value(self, d: int) -> int:
        """Hilbert function of R/I in degree d."""
        if self.dim == 0:
            return self.h[d] if 0 <= d < len(self.h) else 0
        return sum(c * comb(d - i + self.dim - 1, self.dim - 1) for i, c in enumerate(self.h) if i <= d)

    def as_dict(self) -> dict:
        return {"h": list(self.h), "dim": self.dim, "degree": self.degree, "nvars": self.nvars}


def reduce_numerator(K, n: int) -> HilbertData:
    K = [int(x) for x in K]
    while len(K) > 1 and K[-1] == 0:
        K.pop()
    dim = n
    while dim > 0 and sum(K) == 0:
        q, acc = [], 0
        for c in K:
            acc += c
            q.append(acc)
        K = q[:-1] or [0]
        dim -= 1
    return HilbertData(tuple(K), dim, n)


def hilbert_data(leading_exponents, n: int | None = None) -> HilbertData:
    E = np.asarray(leading_exponents, dtype=np.int64)
    n = E.shape[1] if n is None else n
    return reduce_numerator(hilbert_numerator(E.reshape(-1, n)), n)
