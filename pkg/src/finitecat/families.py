"""Named test families, random generators and exhaustive enumeration.

Labeling conventions:

* ``chain(n)``: ``c0 < c1 < ... < c{n-1}``.
* ``antichain(n)``: ``a0 .. a{n-1}``.
* ``fence(n)``: path ``f0 < f1 > f2 < f3 ...``; even indices are minimal.
* ``cycle(2m)``: maximals ``x1..xm``, minimals ``y1..ym``, with ``y_i < x_i``
  and ``y_{i+1 mod m} < x_i``.  ``cycle(4)`` is ``bipartite(2, 2)``.
* ``bipartite(m, n)``: minimals ``y1..ym`` below every maximal ``x1..xn``.
* ``cone(P)``: ``P`` plus a maximum labelled ``top`` (primed on collision).
* ``c5crowns``: maximals ``0..4``, minimals ``d0..d4``, ``d_j < i`` iff
  ``j`` is ``i-1``, ``i`` or ``i+1`` mod 5.
* ``arboricity_gap(k)``: minimals ``a0..a{2k}``, maximals ``b0..b{2k}``, with
  ``U_{b0} = {b0} + all a``, ``U_{bi} = {bi, a0, ai}``.
"""
from __future__ import annotations

import random
from typing import Iterator

from .bits import iter_bits
from .errors import BadParameter
from .poset import FinitePoset, component_masks, from_relations


def chain(n: int) -> FinitePoset:
    _positive(n)
    labels = [f"c{i}" for i in range(n)]
    return FinitePoset(labels, [(1 << i) - 1 for i in range(n)], check=False)


def antichain(n: int) -> FinitePoset:
    _positive(n)
    return FinitePoset([f"a{i}" for i in range(n)], [0] * n, check=False)


def fence(n: int) -> FinitePoset:
    _positive(n)
    labels = [f"f{i}" for i in range(n)]
    pairs = []
    for i in range(n - 1):
        lo, hi = (i, i + 1) if i % 2 == 0 else (i + 1, i)
        pairs.append((labels[lo], labels[hi]))
    return from_relations(labels, pairs, pairs_are_covers=True)


def cycle(size: int) -> FinitePoset:
    if size < 4 or size % 2:
        raise BadParameter(f"cycle size must be even and >= 4, got {size}")
    m = size // 2
    maxs = [f"x{i}" for i in range(1, m + 1)]
    mins = [f"y{i}" for i in range(1, m + 1)]
    pairs = []
    for i in range(m):
        pairs.append((mins[i], maxs[i]))
        pairs.append((mins[(i + 1) % m], maxs[i]))
    return from_relations(maxs + mins, pairs, pairs_are_covers=True)


def bipartite(m_min: int, n_max: int) -> FinitePoset:
    _positive(m_min)
    _positive(n_max)
    mins = [f"y{i}" for i in range(1, m_min + 1)]
    maxs = [f"x{i}" for i in range(1, n_max + 1)]
    pairs = [(a, b) for b in maxs for a in mins]
    return from_relations(mins + maxs, pairs, pairs_are_covers=True)


def cone(base: FinitePoset) -> FinitePoset:
    name = "top"
    while name in base.labels:
        name += "'"
    labels = list(base.labels) + [name]
    return FinitePoset(labels, [base.below(i) for i in range(base.n)] + [base.full_mask], check=False)


def c5crowns() -> FinitePoset:
    maxs = [str(i) for i in range(5)]
    mins = [f"d{j}" for j in range(5)]
    pairs = [(mins[j % 5], maxs[i]) for i in range(5) for j in (i - 1, i, i + 1)]
    return from_relations(maxs + mins, pairs, pairs_are_covers=True)


def arboricity_gap(k: int) -> FinitePoset:
    """Height-1 space with cat 2 but a Gamma multigraph of vertex arboricity k+1."""
    _positive(k)
    n = 2 * k
    mins = [f"a{i}" for i in range(n + 1)]
    maxs = [f"b{i}" for i in range(n + 1)]
    pairs = [(a, "b0") for a in mins]
    for i in range(1, n + 1):
        pairs += [("a0", maxs[i]), (mins[i], maxs[i])]
    return from_relations(mins + maxs, pairs, pairs_are_covers=True)


FAMILIES = {
    "chain": chain,
    "antichain": antichain,
    "fence": fence,
    "cycle": cycle,
    "bipartite": bipartite,
    "cone": cone,
    "c5crowns": c5crowns,
    "arboricity_gap": arboricity_gap,
}


def make_family(kind: str, *params) -> FinitePoset:
    try:
        ctor = FAMILIES[kind]
    except KeyError:
        raise BadParameter(f"unknown family {kind!r}") from None
    return ctor(*params)


def _positive(n):
    if not isinstance(n, int) or n < 1:
        raise BadParameter(f"parameter must be a positive integer, got {n!r}")


# -- random generators -----------------------------------------------------
def random_poset(n: int, density: float = 0.3, rng: random.Random | None = None) -> FinitePoset:
    """Random poset: random DAG on a hidden linear order, closed, then relabelled."""
    rng = rng or random.Random()
    perm = list(range(n))
    rng.shuffle(perm)
    direct = [0] * n
    for j in range(n):
        for i in range(j):
            if rng.random() < density:
                direct[perm[j]] |= 1 << perm[i]
    labels = [f"p{i}" for i in range(n)]
    pairs = [(labels[i], labels[j]) for j in range(n) for i in iter_bits(direct[j])]
    return from_relations(labels, pairs)


def random_height1(n_min: int, n_max: int, density: float = 0.5,
                   rng: random.Random | None = None, connected: bool = True) -> FinitePoset:
    """Random height-1 poset with ``n_min`` minimals and ``n_max`` maximals.

    Every maximal gets at least one point below it; with ``connected`` the
    draw is repeated until the comparability graph is connected.
    """
    rng = rng or random.Random()
    mins = [f"y{i}" for i in range(n_min)]
    maxs = [f"x{i}" for i in range(n_max)]
    for _ in range(10_000):
        pairs = []
        for b in maxs:
            below = [a for a in mins if rng.random() < density] or [rng.choice(mins)]
            pairs += [(a, b) for a in below]
        P = from_relations(mins + maxs, pairs)
        if not connected or len(component_masks(P, P.full_mask)) == 1:
            return P
    raise BadParameter("could not draw a connected height-1 poset; raise the density")


def graft_beat_points(P: FinitePoset, k: int, rng: random.Random | None = None,
                      kinds: str = "both") -> FinitePoset:
    """Adjoin ``k`` new points, each a beat point at the moment it is added.

    An up-grafted point ``z`` gets a single upper cover ``w`` and a random
    down-set inside ``U_w``; down-grafting is the order dual.  Removing the
    new points in reverse order recovers ``P``.
    """
    rng = rng or random.Random()
    labels = list(P.labels)
    below = [P.below(i) for i in range(P.n)]
    for t in range(k):
        n = len(labels)
        above = [0] * n
        for i, m in enumerate(below):
            for j in iter_bits(m):
                above[j] |= 1 << i
        w = rng.randrange(n)
        kind = rng.choice(("up", "down")) if kinds == "both" else kinds
        name = f"g{t}"
        while name in labels:
            name += "'"
        if kind == "up":
            down = 0
            for j in iter_bits(below[w]):
                if rng.random() < 0.5:
                    down |= 1 << j | below[j]
            below.append(down)
            up_set = above[w] | 1 << w
        else:
            up = 0
            for j in iter_bits(above[w]):
                if rng.random() < 0.5:
                    up |= 1 << j | above[j]
            below.append(below[w] | 1 << w)
            up_set = up
        for j in iter_bits(up_set):
            below[j] |= 1 << n
        labels.append(name)
    return FinitePoset(labels, below)


# -- exhaustive enumeration ---------------------------------------------------
def _down_sets(below: list[int]) -> Iterator[int]:
    """All down-sets (including the empty one) of the order given by masks."""
    n = len(below)
    seen = set()
    stack = [0]
    seen.add(0)
    while stack:
        d = stack.pop()
        yield d
        for x in range(n):
            if not d >> x & 1 and below[x] & ~d == 0:
                e = d | 1 << x
                if e not in seen:
                    seen.add(e)
                    stack.append(e)


def enumerate_posets(n: int) -> list[FinitePoset]:
    """One representative of every isomorphism class of ``n``-point posets.

    Built by adjoining a new maximal point over each down-set of the
    ``(n-1)``-point representatives, then deduplicating by isomorphism.
    """
    from .isomorphism import invariant_key, find_isomorphism

    if n < 0:
        raise BadParameter("n must be >= 0")
    if n == 0:
        return []
    reps: list[list[int]] = [[0]]
    for size in range(2, n + 1):
        buckets: dict = {}
        out: list[list[int]] = []
        for below in reps:
            for d in _down_sets(below):
                cand = below + [d]
                Q = FinitePoset([str(i) for i in range(size)], cand, check=False)
                key = invariant_key(Q)
                bucket = buckets.setdefault(key, [])
                if any(find_isomorphism(Q, R, limit=None) is not None for R in bucket):
                    continue
                bucket.append(Q)
                out.append(cand)
        reps = out
    labels = [f"e{i}" for i in range(n)]
    return [FinitePoset(labels, b, check=False) for b in reps]
