import os
from pathlib import Path

import numpy as np
import pytest

from goepel import pipeline
from goepel.polyring.fields import PrimeField
from goepel.polyring.sparse import Poly, PolyRing


def to_pairs(polys):
    """Sparse Poly objects -> (exps, coefs) pairs for the F4 engine."""
    out = []
    for f in polys:
        terms = f.sorted_terms()
        out.append((np.array([e for e, _ in terms], dtype=np.int8),
                    np.array([int(c) for _, c in terms], dtype=np.int64)))
    return out


def from_pairs(pairs, ring: PolyRing):
    return [Poly(ring, {tuple(int(x) for x in e): int(c) for e, c in zip(ex, cf)}) for ex, cf in pairs]


def random_homogeneous(ring: PolyRing, degree: int, terms: int, rng) -> Poly:
    p = ring.domain.p
    d = {}
    for _ in range(terms):
        e = np.zeros(ring.n, dtype=int)
        for i in rng.integers(0, ring.n, degree):
            e[i] += 1
        d[tuple(int(x) for x in e)] = int(rng.integers(1, p))
    return Poly(ring, d)


@pytest.fixture
def small_ring():
    return PolyRing(["x", "y", "z", "w"], PrimeField(101))


@pytest.fixture(scope="session")
def run_dir(tmp_path_factory) -> Path:
    """Output directory shared by the expensive genus-3 tests.

    GOEPEL_TEST_DIR reuses a directory across sessions (its cache included);
    by default every session starts cold.
    """
    fixed = os.environ.get("GOEPEL_TEST_DIR")
    if fixed:
        Path(fixed).mkdir(parents=True, exist_ok=True)
        return Path(fixed)
    return tmp_path_factory.mktemp("run")


@pytest.fixture(scope="session")
def ctx(run_dir):
    return pipeline.Context(pipeline.Config(run_dir))
