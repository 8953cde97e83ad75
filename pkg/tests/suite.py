"""Seeded random map families shared by the module and acceptance tests."""

from __future__ import annotations

import random
from functools import lru_cache

from pcim.decomposition import Budget, decompose
from pcim.gallery import random_map, random_wrap_map

SUITE_SEED = 20240611
WRAP_SEED = 7


@lru_cache(maxsize=None)
def random_suite(n: int = 50, seed: int = SUITE_SEED):
    rng = random.Random(seed)
    return tuple(random_map(rng, rng.choice([2, 3, 4])) for _ in range(n))


@lru_cache(maxsize=None)
def wrap_suite(n: int = 30, seed: int = WRAP_SEED):
    rng = random.Random(seed)
    return tuple(random_wrap_map(rng) for _ in range(n))


@lru_cache(maxsize=None)
def suite_reports(n: int = 50, horizon: int = 10**4, depth: int = 12):
    budget = Budget(horizon=horizon, depth=depth)
    return tuple(decompose(spec, budget) for spec in random_suite(n))
