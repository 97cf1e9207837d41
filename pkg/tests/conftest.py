from __future__ import annotations

import random

import pytest
from hypothesis import HealthCheck, settings

from fkocert import Clause, Cnf

settings.register_profile(
    "det",
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("det")


def planted_block(blocks: int) -> Cnf:
    """`blocks` disjoint variable triples, each carrying all 8 polarity
    patterns — unsatisfiable, perfectly balanced, and M = 0."""
    clauses = []
    for b in range(blocks):
        trip = (3 * b + 1, 3 * b + 2, 3 * b + 3)
        for bits in range(8):
            clauses.append(Clause(trip, (bits >> 2 & 1, bits >> 1 & 1, bits & 1)))
    return Cnf(3 * blocks, tuple(clauses))


@pytest.fixture
def rng() -> random.Random:
    return random.Random(0x5EED)
