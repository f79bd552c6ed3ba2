"""Exact minimum set cover over bitmasks (depth-first branch and bound).

Branching picks the uncovered element with the fewest covering candidates
(ties: lowest index) and tries its candidates by decreasing fresh coverage.
Dominated candidates (subsets of another candidate) are dropped first, which
never changes the optimum.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .bits import iter_bits
from .errors import BudgetExceeded, UncoverableVertex


@dataclass(frozen=True)
class CoverSolution:
    # indices into the candidate list passed in
    chosen: tuple[int, ...]
    exact: bool
    lower: int
    nodes: int

    @property
    def size(self) -> int:
        return len(self.chosen)


def _reduce(target: int, sets: Sequence[int]) -> list[int]:
    """Indices of the inclusion-maximal candidates (first index wins ties)."""
    order = sorted(range(len(sets)), key=lambda i: (-(sets[i] & target).bit_count(), i))
    kept: list[int] = []
    kept_masks: list[int] = []
    for i in order:
        m = sets[i] & target
        if not m:
            continue
        if any(m & ~k == 0 for k in kept_masks):
            continue
        kept.append(i)
        kept_masks.append(m)
    return kept


def greedy_set_cover(target: int, sets: Sequence[int]) -> list[int]:
    uncovered = target
    chosen = []
    while uncovered:
        best = max(range(len(sets)), key=lambda i: ((sets[i] & uncovered).bit_count(), -i))
        if not sets[best] & uncovered:
            raise UncoverableVertex(f"element {next(iter_bits(uncovered))} lies in no candidate")
        chosen.append(best)
        uncovered &= ~sets[best]
    return chosen


def _disjoint_lower_bound(uncovered: int, covers_of: dict[int, list[int]], masks: list[int]) -> int:
    """Elements whose candidate families are pairwise disjoint need distinct sets."""
    used = 0
    count = 0
    for e in sorted(iter_bits(uncovered), key=lambda e: len(covers_of[e])):
        fam = 0
        for k in covers_of[e]:
            fam |= 1 << k
        if not fam & used:
            used |= fam
            count += 1
    return count


def exact_set_cover(target: int, sets: Sequence[int], node_limit: int = 2_000_000) -> CoverSolution:
    """Minimum number of ``sets`` whose union contains ``target``.

    Raises :class:`BudgetExceeded` (with ``lower``/``upper``/``witness``) when
    ``node_limit`` branch nodes are exhausted.
    """
    if not target:
        return CoverSolution((), True, 0, 0)
    kept = _reduce(target, sets)
    masks = [sets[i] & target for i in kept]
    union = 0
    for m in masks:
        union |= m
    if target & ~union:
        raise UncoverableVertex(f"element {next(iter_bits(target & ~union))} lies in no candidate")

    covers_of: dict[int, list[int]] = {e: [] for e in iter_bits(target)}
    for k, m in enumerate(masks):
        for e in iter_bits(m):
            covers_of[e].append(k)

    greedy = greedy_set_cover(target, masks)
    best = list(greedy)
    root_lower = max(_disjoint_lower_bound(target, covers_of, masks), 1)
    nodes = 0
    chosen: list[int] = []

    def lower_bound(uncovered: int) -> int:
        top = 0
        for m in masks:
            c = (m & uncovered).bit_count()
            if c > top:
                top = c
        return -(-uncovered.bit_count() // top)

    def dfs(uncovered: int) -> None:
        nonlocal nodes, best
        nodes += 1
        if nodes > node_limit:
            raise _Stop
        if not uncovered:
            if len(chosen) < len(best):
                best = list(chosen)
            return
        if len(chosen) + lower_bound(uncovered) >= len(best):
            return
        # most constrained element
        e = min(iter_bits(uncovered), key=lambda x: (len(covers_of[x]), x))
        opts = sorted(covers_of[e], key=lambda k: (-(masks[k] & uncovered).bit_count(), k))
        for k in opts:
            chosen.append(k)
            dfs(uncovered & ~masks[k])
            chosen.pop()
            if len(best) == root_lower:
                return

    if len(best) > root_lower:
        try:
            dfs(target)
        except _Stop:
            witness = tuple(sorted(kept[k] for k in best))
            raise BudgetExceeded(
                f"set cover search exceeded {node_limit} nodes",
                lower=root_lower, upper=len(best), witness=witness,
            ) from None
    return CoverSolution(tuple(sorted(kept[k] for k in best)), True, len(best), nodes)


class _Stop(Exception):
    pass
