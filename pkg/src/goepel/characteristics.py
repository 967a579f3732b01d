"""Theta characteristics over F_2^{2g}, Goepel groups and the modular action.

A characteristic m = (a; b) is stored as a bit-packed int: bit i holds
coordinate i, so a occupies bits 0..g-1 and b bits g..2g-1.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Hashable, Iterable, Sequence

import numpy as np

# the 36 even genus-3 characteristics in the standard numbering (1-based)
GENUS3_TABLE = (
    (0, 0, 0, 0, 0, 0), (1, 0, 0, 0, 0, 0), (0, 1, 0, 0, 0, 0), (1, 1, 0, 0, 0, 0),
    (0, 0, 1, 0, 0, 0), (1, 0, 1, 0, 0, 0), (0, 1, 1, 0, 0, 0), (1, 1, 1, 0, 0, 0),
    (0, 0, 0, 1, 0, 0), (0, 1, 0, 1, 0, 0), (0, 0, 1, 1, 0, 0), (0, 1, 1, 1, 0, 0),
    (0, 0, 0, 0, 1, 0), (1, 0, 0, 0, 1, 0), (0, 0, 1, 0, 1, 0), (1, 0, 1, 0, 1, 0),
    (0, 0, 0, 1, 1, 0), (1, 1, 0, 1, 1, 0), (0, 0, 1, 1, 1, 0), (1, 1, 1, 1, 1, 0),
    (0, 0, 0, 0, 0, 1), (1, 0, 0, 0, 0, 1), (0, 1, 0, 0, 0, 1), (1, 1, 0, 0, 0, 1),
    (0, 0, 0, 1, 0, 1), (0, 1, 0, 1, 0, 1), (1, 0, 1, 1, 0, 1), (1, 1, 1, 1, 0, 1),
    (0, 0, 0, 0, 1, 1), (1, 0, 0, 0, 1, 1), (0, 1, 1, 0, 1, 1), (1, 1, 1, 0, 1, 1),
    (0, 0, 0, 1, 1, 1), (1, 1, 0, 1, 1, 1), (1, 0, 1, 1, 1, 1), (0, 1, 1, 1, 1, 1),
)

# the ten even genus-2 characteristics, numbered as in the genus-2 worked example
GENUS2_TABLE = (
    (0, 0, 0, 0), (0, 0, 0, 1), (0, 0, 1, 0), (0, 0, 1, 1), (0, 1, 0, 0),
    (0, 1, 1, 0), (1, 0, 0, 0), (1, 0, 0, 1), (1, 1, 0, 0), (1, 1, 1, 1),
)

GENUS1_TABLE = ((0, 0), (0, 1), (1, 0))

TABLES = {1: GENUS1_TABLE, 2: GENUS2_TABLE, 3: GENUS3_TABLE}

# power of theta_G that is a modular form on the level-2 group
K_G = {1: 4, 2: 2, 3: 1}


def pack(bits: Sequence[int]) -> int:
    return sum((int(b) & 1) << i for i, b in enumerate(bits))


def unpack(m: int, g: int) -> tuple[int, ...]:
    return tuple((m >> i) & 1 for i in range(2 * g))


def _check_genus(g: int) -> None:
    if g not in (1, 2, 3):
        raise ValueError(f"unsupported genus {g}")


@dataclass(frozen=True, order=True)
class Characteristic:
    """A theta characteristic (a; b) in F_2^{2g}."""

    bits: int
    genus: int

    def __post_init__(self):
        _check_genus(self.genus)
        if not 0 <= self.bits < 1 << (2 * self.genus):
            raise ValueError("bits out of range for genus")

    @classmethod
    def from_vector(cls, v: Sequence[int]) -> "Characteristic":
        if len(v) % 2:
            raise ValueError("characteristic needs an even number of entries")
        return cls(pack(v), len(v) // 2)

    @property
    def vector(self) -> tuple[int, ...]:
        return unpack(self.bits, self.genus)

    @property
    def a(self) -> tuple[int, ...]:
        return self.vector[: self.genus]

    @property
    def b(self) -> tuple[int, ...]:
        return self.vector[self.genus:]

    def __add__(self, other: "Characteristic") -> "Characteristic":
        if other.genus != self.genus:
            raise ValueError("genus mismatch")
        return Characteristic(self.bits ^ other.bits, self.genus)

    def is_even(self) -> bool:
        return is_even(self.bits, self.genus)

    def pairing(self, other: "Characteristic") -> int:
        if other.genus != self.genus:
            raise ValueError("genus mismatch")
        return pairing(self.bits, other.bits, self.genus)

    def index(self) -> int:
        """1-based position in the standard table of even characteristics."""
        return even_index(self.genus)[self.bits]


def _popcount(x: int) -> int:
    return bin(x).count("1")


def is_even(m: int, g: int) -> bool:
    mask = (1 << g) - 1
    return _popcount(m & (m >> g) & mask) % 2 == 0


def pairing(m: int, n: int, g: int) -> int:
    """Symplectic pairing a.beta + b.alpha mod 2."""
    mask = (1 << g) - 1
    a, b = m & mask, m >> g
    al, be = n & mask, n >> g
    return (_popcount(a & be) + _popcount(b & al)) % 2


@lru_cache(maxsize=None)
def even_characteristics(g: int) -> tuple[int, ...]:
    """Even characteristics as packed ints, in table order."""
    _check_genus(g)
    table = tuple(pack(r) for r in TABLES[g])
    return table


@lru_cache(maxsize=None)
def even_index(g: int) -> dict[int, int]:
    return {m: i + 1 for i, m in enumerate(even_characteristics(g))}


def all_characteristics(g: int) -> range:
    return range(1 << (2 * g))


def span(vectors: Iterable[int]) -> frozenset[int]:
    out = {0}
    for v in vectors:
        out |= {v ^ w for w in out}
    return frozenset(out)


@dataclass(frozen=True)
class GopelGroup:
    """Maximal isotropic subspace together with its unique even translate."""

    elements: frozenset[int]
    even_coset: frozenset[int]
    genus: int

    @property
    def coset_indices(self) -> tuple[int, ...]:
        idx = even_index(self.genus)
        return tuple(sorted(idx[m] for m in self.even_coset))

    @property
    def complement_indices(self) -> tuple[int, ...]:
        inside = set(self.coset_indices)
        n = len(even_characteristics(self.genus))
        return tuple(i for i in range(1, n + 1) if i not in inside)


def is_isotropic(vectors: Iterable[int], g: int) -> bool:
    vs = list(vectors)
    return all(pairing(x, y, g) == 0 for x, y in itertools.combinations(vs, 2))


def even_coset(elements: Iterable[int], g: int) -> frozenset[int]:
    """The unique translate of a Goepel group made of even characteristics."""
    G = frozenset(elements)
    if len(G) != 1 << g or span(G) != G:
        raise ValueError("not a subspace of dimension g")
    if not is_isotropic(G, g):
        raise ValueError("subspace is not isotropic")
    found = set()
    for shift in all_characteristics(g):
        coset = frozenset(shift ^ x for x in G)
        if all(is_even(m, g) for m in coset):
            found.add(coset)
    if len(found) != 1:
        raise ValueError(f"expected one even translate, found {len(found)}")
    return found.pop()


@lru_cache(maxsize=None)
def enumerate_gopel_groups(g: int) -> tuple[GopelGroup, ...]:
    """All maximal isotropic subspaces, sorted by their sorted element lists."""
    _check_genus(g)
    seen = set()
    nonzero = range(1, 1 << (2 * g))
    for basis in itertools.combinations(nonzero, g):
        if not is_isotropic(basis, g):
            continue
        S = span(basis)
        if len(S) == 1 << g:
            seen.add(S)
    groups = [GopelGroup(S, even_coset(S, g), g) for S in seen]
    groups.sort(key=lambda G: sorted(G.elements))
    return tuple(groups)


def gopel_count(g: int) -> int:
    out = 1
    for k in range(1, g + 1):
        out *= 2 ** k + 1
    return out


def coset_matrix(G: GopelGroup) -> np.ndarray:
    """2g x 2^g 0/1 matrix whose columns are the coset characteristics."""
    cols = [unpack(m, G.genus) for m in sorted(G.even_coset, key=even_index(G.genus).get)]
    return np.array(cols, dtype=np.int64).T


def coset_congruences(G: GopelGroup) -> bool:
    """k_g M M' is 0 mod 2 with diagonal 0 mod 4."""
    M = coset_matrix(G)
    S = K_G[G.genus] * (M @ M.T)
    return bool(np.all(S % 2 == 0) and np.all(np.diag(S) % 4 == 0))


# symplectic group over F_2


def standard_form(g: int) -> np.ndarray:
    """The form [[0, -E], [E, 0]] reduced mod 2."""
    Z = np.zeros((g, g), dtype=np.int64)
    E = np.eye(g, dtype=np.int64)
    return np.block([[Z, E], [E, Z]])


def is_symplectic(M: np.ndarray) -> bool:
    M = np.asarray(M, dtype=np.int64) % 2
    g = M.shape[0] // 2
    I = standard_form(g)
    return bool(np.array_equal(M.T @ I @ M % 2, I))


def _inverse_mod2(M: np.ndarray) -> np.ndarray:
    n = M.shape[0]
    A = np.hstack([M % 2, np.eye(n, dtype=np.int64)])
    r = 0
    for c in range(n):
        piv = np.nonzero(A[r:, c])[0]
        if not len(piv):
            raise ValueError("matrix is singular mod 2")
        k = r + piv[0]
        A[[r, k]] = A[[k, r]]
        for i in range(n):
            if i != r and A[i, c]:
                A[i] ^= A[r]
        r += 1
    return A[:, n:]


class SymplecticElement:
    """An element of Sp(2g, F_2) given by 0/1 integer blocks A, B, C, D."""

    def __init__(self, M: np.ndarray):
        M = np.asarray(M, dtype=np.int64)
        if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] % 2:
            raise ValueError("expected a 2g x 2g matrix")
        if not is_symplectic(M):
            raise ValueError("matrix is not symplectic mod 2")
        self.M = M
        self.genus = M.shape[0] // 2
        g = self.genus
        A, B, C, D = M[:g, :g], M[:g, g:], M[g:, :g], M[g:, g:]
        self._lin = _inverse_mod2(M.T % 2)
        self._shift = np.concatenate([np.diag(C @ D.T), np.diag(A @ B.T)]) % 2
        self._table = None

    def __matmul__(self, other: "SymplecticElement") -> "SymplecticElement":
        return SymplecticElement(self.M @ other.M % 2)

    def act_vector(self, v: Sequence[int]) -> np.ndarray:
        return (self._lin @ np.asarray(v, dtype=np.int64) + self._shift) % 2

    def linear_part(self, m: int) -> int:
        return pack(self._lin @ np.array(unpack(m, self.genus)) % 2)

    def permutation(self) -> np.ndarray:
        """Image of every packed characteristic under the affine action."""
        if self._table is None:
            g = self.genus
            self._table = np.array(
                [pack(self.act_vector(unpack(m, g))) for m in all_characteristics(g)],
                dtype=np.int64)
        return self._table

    def __call__(self, m: int) -> int:
        return int(self.permutation()[m])


def modular_action(M: SymplecticElement, m: Characteristic) -> Characteristic:
    if M.genus != m.genus:
        raise ValueError("genus mismatch")
    return Characteristic(M(m.bits), m.genus)


@lru_cache(maxsize=None)
def standard_generators(g: int) -> tuple[SymplecticElement, ...]:
    """J together with the translations [[E, S], [0, E]] for a basis of symmetric S."""
    _check_genus(g)
    E = np.eye(g, dtype=np.int64)
    Z = np.zeros((g, g), dtype=np.int64)
    gens = [SymplecticElement(standard_form(g))]
    for i in range(g):
        for j in range(i, g):
            S = np.zeros((g, g), dtype=np.int64)
            S[i, j] = S[j, i] = 1
            gens.append(SymplecticElement(np.block([[E, S], [Z, E]])))
    return tuple(gens)


def classify_orbits(items: Sequence[Hashable], action: Callable[[object, Hashable], Hashable],
                    generators: Sequence[object]) -> list[list[Hashable]]:
    """Partition items into orbits of the group generated by generators.

    action(gen, item) must return the canonical form of the image.
    """
    pool = set(items)
    left = list(dict.fromkeys(items))
    seen = set()
    orbits = []
    for start in left:
        if start in seen:
            continue
        orbit = [start]
        seen.add(start)
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for s in generators:
                y = action(s, x)
                if y not in seen:
                    if y not in pool:
                        raise ValueError("item set is not closed under the action")
                    seen.add(y)
                    orbit.append(y)
                    queue.append(y)
        orbits.append(orbit)
    return orbits


def coset_permutation(M: SymplecticElement) -> np.ndarray:
    """Induced permutation of the Goepel groups (0-based, canonical order)."""
    g = M.genus
    groups = enumerate_gopel_groups(g)
    where = {G.even_coset: k for k, G in enumerate(groups)}
    perm = M.permutation()
    return np.array([where[frozenset(int(perm[m]) for m in G.even_coset)] for G in groups],
                    dtype=np.int64)


def even_permutation(M: SymplecticElement) -> np.ndarray:
    """Induced permutation of the even characteristics (0-based table positions)."""
    g = M.genus
    idx = even_index(g)
    perm = M.permutation()
    return np.array([idx[int(perm[m])] - 1 for m in even_characteristics(g)], dtype=np.int64)


def group_closure(gens: Sequence[SymplecticElement], limit: int = 10 ** 6) -> list[np.ndarray]:
    """All elements generated by gens, as permutations of the characteristics."""
    start = tuple(range(len(gens[0].permutation())))
    seen = {start}
    queue = deque([start])
    perms = [np.asarray(s.permutation()) for s in gens]
    while queue:
        x = queue.popleft()
        for p in perms:
            y = tuple(int(p[i]) for i in x)
            if y not in seen:
                seen.add(y)
                queue.append(y)
                if len(seen) > limit:
                    raise RuntimeError("closure exceeds limit")
    return [np.array(x) for x in seen]
