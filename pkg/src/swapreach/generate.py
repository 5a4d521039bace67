"""Seeded random instances for experiments and the ``gen`` command."""

from __future__ import annotations

import random
from typing import Optional

from .core import Instance, Network, Query

KINDS = ("strict-path", "weak-star", "weak-path")


def random_tiers(n: int, rng: random.Random, tie_prob: float = 0.4) -> tuple[tuple[int, ...], ...]:
    """A random weak order: shuffle, then merge neighbors with probability ``tie_prob``."""
    order = rng.sample(range(1, n + 1), n)
    tiers = [[order[0]]]
    for o in order[1:]:
        if rng.random() < tie_prob:
            tiers[-1].append(o)
        else:
            tiers.append([o])
    return tuple(tuple(sorted(t)) for t in tiers)


def random_strict_path(n: int, rng: random.Random) -> Instance:
    prefs = tuple(tuple((o,) for o in rng.sample(range(1, n + 1), n)) for _ in range(n))
    return Instance(n, Network.path(n), prefs)


def random_weak_path(n: int, rng: random.Random, tie_prob: float = 0.4) -> Instance:
    return Instance(n, Network.path(n), tuple(random_tiers(n, rng, tie_prob) for _ in range(n)))


def random_weak_star(n: int, rng: random.Random, center: Optional[int] = None,
                     tie_prob: float = 0.4) -> Instance:
    c = rng.randint(1, n) if center is None else center
    return Instance(n, Network.star(n, c), tuple(random_tiers(n, rng, tie_prob) for _ in range(n)))


def generate(kind: str, n: int, seed: int) -> Instance:
    rng = random.Random(seed)
    if kind == "strict-path":
        inst = random_strict_path(n, rng)
    elif kind == "weak-path":
        inst = random_weak_path(n, rng)
    elif kind == "weak-star":
        inst = random_weak_star(n, rng)
    else:
        raise ValueError(f"unknown generator kind {kind!r}; choose from {', '.join(KINDS)}")
    return inst.with_query(Query("object-reachability", rng.randint(1, n), rng.randint(1, n)))
