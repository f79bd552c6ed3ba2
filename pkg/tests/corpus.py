"""Shared instances: named fixtures plus seeded random posets."""
from __future__ import annotations

import random
from functools import lru_cache

from finitecat import families as fam


def named_fixtures() -> dict:
    out = {
        "chain3": fam.chain(3),
        "chain5": fam.chain(5),
        "antichain3": fam.antichain(3),
        "fence5": fam.fence(5),
        "cycle4": fam.cycle(4),
        "cycle6": fam.cycle(6),
        "cycle8": fam.cycle(8),
        "cone_cycle4": fam.cone(fam.cycle(4)),
        "c5crowns": fam.c5crowns(),
        "gap2": fam.arboricity_gap(2),
    }
    for n in range(2, 7):
        out[f"bipartite2_{n}"] = fam.bipartite(2, n)
    return out


@lru_cache(maxsize=None)
def small_corpus(max_points: int = 9, randoms: int = 40, seed: int = 7) -> tuple:
    """Named fixtures up to ``max_points``, all posets on <= 4 points, and seeded random ones."""
    items = [(k, P) for k, P in named_fixtures().items() if P.n <= max_points]
    for n in range(1, 5):
        items += [(f"all{n}_{i}", P) for i, P in enumerate(fam.enumerate_posets(n))]
    rng = random.Random(seed)
    for i in range(randoms):
        n = rng.randint(5, max_points)
        items.append((f"rand{i}", fam.random_poset(n, rng.uniform(0.15, 0.5), rng)))
    return tuple(items)


@lru_cache(maxsize=None)
def all_posets(n: int) -> tuple:
    return tuple(fam.enumerate_posets(n))
