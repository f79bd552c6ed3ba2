"""Beat points, cores and contractibility.

A point is an up beat point when the points above it have a minimum and a
down beat point when the points below it have a maximum; removing one is a
strong deformation retract.  Exhaustive removal yields the core, unique up
to isomorphism in the homotopy type.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Literal

import numpy as np

from .bits import iter_bits
from .errors import EmptyGenerator, StaleBeatPoint
from .isomorphism import is_isomorphic
from .poset import (
    FinitePoset,
    _as_mask,
    induced_subposet,
    transitive_closure,
    transitive_reduction,
)

Kind = Literal["up", "down", "both"]


@dataclass(frozen=True)
class BeatPointReport:
    point: int
    kind: Kind
    # unique upper cover for up (and both), unique lower cover for down
    witness: int


@dataclass(frozen=True)
class CoreResult:
    core: FinitePoset
    removal_trace: tuple[BeatPointReport, ...]
    # core index -> index in the input poset
    embedding: tuple[int, ...]

    @property
    def is_point(self) -> bool:
        return self.core.n == 1

    def trace_lines(self, poset: FinitePoset) -> list[str]:
        """``<label> up|down witness=<label>`` per removal; both-kind points print as up."""
        out = []
        for r in self.removal_trace:
            kind = "down" if r.kind == "down" else "up"
            out.append(f"{poset.label(r.point)} {kind} witness={poset.label(r.witness)}")
        return out


def _classify(P: FinitePoset, x: int) -> BeatPointReport | None:
    up = P.upper_covers(x)
    down = P.lower_covers(x)
    is_up = up.bit_count() == 1
    is_down = down.bit_count() == 1
    if is_up:
        w = up.bit_length() - 1
        return BeatPointReport(x, "both" if is_down else "up", w)
    if is_down:
        return BeatPointReport(x, "down", down.bit_length() - 1)
    return None


def find_beat_points(poset: FinitePoset) -> list[BeatPointReport]:
    """Points with exactly one upper cover or exactly one lower cover."""
    return [r for x in range(poset.n) if (r := _classify(poset, x)) is not None]


def remove_beat_point(poset: FinitePoset, report: BeatPointReport) -> FinitePoset:
    current = _classify(poset, report.point) if 0 <= report.point < poset.n else None
    if current is None:
        raise StaleBeatPoint(f"point {report.point} is not a beat point of this poset")
    return induced_subposet(poset, poset.full_mask & ~(1 << report.point))


# -- kernel ------------------------------------------------------------------
def _beat_in(P: FinitePoset, S: int, p: int) -> tuple[str, int] | None:
    """Beat status of topo position ``p`` inside the topo-space subset ``S``."""
    hi = P._tabove[p] & S
    if hi:
        y = (hi & -hi).bit_length() - 1  # a minimum has the lowest position
        if not hi & ~(P._tabove[y] | 1 << y):
            lo = P._tbelow[p] & S
            if lo:
                z = lo.bit_length() - 1
                if not lo & ~(P._tbelow[z] | 1 << z):
                    return "both", y
            return "up", y
    lo = P._tbelow[p] & S
    if lo:
        z = lo.bit_length() - 1  # a maximum has the highest position
        if not lo & ~(P._tbelow[z] | 1 << z):
            return "down", z
    return None


def core_mask(P: FinitePoset, mask: int | None = None) -> int:
    """Members of a core of the subspace ``mask`` (fast sweep, no trace)."""
    S = P._to_topo(P.full_mask if mask is None else mask)
    tb, ta = P._tbelow, P._tabove
    changed = True
    while changed:
        changed = False
        rest = S
        while rest:
            low = rest & -rest
            rest ^= low
            p = low.bit_length() - 1
            hi = ta[p] & S
            if hi:
                y = (hi & -hi).bit_length() - 1
                if not hi & ~(ta[y] | 1 << y):
                    S ^= low
                    changed = True
                    continue
            lo = tb[p] & S
            if lo:
                z = lo.bit_length() - 1
                if not lo & ~(tb[z] | 1 << z):
                    S ^= low
                    changed = True
    return P._from_topo(S)


def contractible_mask(P: FinitePoset, mask: int) -> bool:
    """Whether the subspace on ``mask`` is contractible (its core is one point)."""
    return mask != 0 and core_mask(P, mask).bit_count() == 1


class ContractibilityOracle:
    """Memoized contractibility of subspaces of one poset, counting queries.

    ``calls`` counts every query (the number of times the contractibility
    test is *invoked*); ``evaluations`` counts cache misses.
    """

    def __init__(self, poset: FinitePoset):
        self.poset = poset
        self.calls = 0
        self.evaluations = 0
        self._cache: dict[int, bool] = {}

    def __call__(self, mask: int) -> bool:
        self.calls += 1
        hit = self._cache.get(mask)
        if hit is None:
            self.evaluations += 1
            hit = self._cache[mask] = contractible_mask(self.poset, mask)
        return hit

    def peek(self, mask: int) -> bool:
        """Same answer as a call, without touching the counters."""
        hit = self._cache.get(mask)
        if hit is None:
            hit = self._cache[mask] = contractible_mask(self.poset, mask)
        return hit


# -- OP: core -------------------------------------------------------------------
def core(poset: FinitePoset, seed: int | None = None, incremental: bool = False) -> CoreResult:
    """Contractibility test: remove beat points one at a time until none remain.

    The lowest-index beat point goes first; with ``seed`` the scan order is
    reshuffled before every removal.  ``incremental=True`` runs the Hasse
    diagram surgery variant instead of recomputing from the order.
    """
    if incremental:
        return _core_incremental(poset)
    rng = random.Random(seed) if seed is not None else None
    n = poset.n
    S = poset._to_topo(poset.full_mask)
    scan = [poset._pos[i] for i in range(n)]
    trace = []
    while True:
        if rng is not None:
            rng.shuffle(scan)
        for p in scan:
            if not S >> p & 1:
                continue
            hit = _beat_in(poset, S, p)
            if hit is not None:
                kind, w = hit
                trace.append(BeatPointReport(poset._order[p], kind, poset._order[w]))
                S &= ~(1 << p)
                break
        else:
            break
    keep = poset._from_topo(S)
    return CoreResult(induced_subposet(poset, list(iter_bits(keep))), tuple(trace), tuple(iter_bits(keep)))


def _core_incremental(poset: FinitePoset) -> CoreResult:
    """Hasse-diagram surgery: splice a beat point's edges onto its witness.

    A removed down beat point ``b`` with lower cover ``a`` hands its upper
    covers to ``a`` (dually for up beat points).  If a spliced edge turns out
    to be implied by a longer path, the reduction is recomputed.
    """
    alive = set(range(poset.n))
    up = {i: set(iter_bits(poset.upper_covers(i))) for i in alive}
    down = {i: set(iter_bits(poset.lower_covers(i))) for i in alive}
    trace = []
    while True:
        b = next((x for x in sorted(alive) if len(up[x]) == 1 or len(down[x]) == 1), None)
        if b is None:
            break
        if len(up[b]) == 1:
            (w,) = up[b]
            kind = "both" if len(down[b]) == 1 else "up"
            for v in down[b]:
                up[v].discard(b)
                up[v].add(w)
                down[w].add(v)
            down[w].discard(b)
            new_edges = [(v, w) for v in down[b]]
        else:
            (w,) = down[b]
            kind = "down"
            for v in up[b]:
                down[v].discard(b)
                down[v].add(w)
                up[w].add(v)
            up[w].discard(b)
            new_edges = [(w, v) for v in up[b]]
        trace.append(BeatPointReport(b, kind, w))
        alive.discard(b)
        del up[b], down[b]
        if any(_has_long_path(up, a, c) for a, c in new_edges):
            _rereduce(alive, up, down)
    keep = sorted(alive)
    return CoreResult(induced_subposet(poset, keep), tuple(trace), tuple(keep))


def _has_long_path(up: dict, a: int, c: int) -> bool:
    stack = [v for v in up[a] if v != c]
    seen = set(stack)
    while stack:
        v = stack.pop()
        if v == c:
            return True
        for u in up[v]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return False


def _rereduce(alive, up, down) -> None:
    idx = sorted(alive)
    pos = {v: k for k, v in enumerate(idx)}
    rel = np.zeros((len(idx), len(idx)), dtype=bool)
    for v in idx:
        for u in up[v]:
            rel[pos[v], pos[u]] = True
    hasse = transitive_reduction(transitive_closure(rel))
    for v in idx:
        up[v] = {idx[j] for j in np.nonzero(hasse[pos[v]])[0]}
        down[v] = {idx[i] for i in np.nonzero(hasse[:, pos[v]])[0]}


# -- OP: predicates ---------------------------------------------------------------
def is_contractible(poset: FinitePoset) -> bool:
    """Connected with a one-point core.  (A one-point core forces connectedness.)"""
    return poset.n > 0 and core_mask(poset).bit_count() == 1


def is_compatible(poset: FinitePoset, J: Iterable[int]) -> bool:
    """Whether ``U_J`` is contractible in itself."""
    mask = _as_mask(poset, J)
    if not mask:
        raise EmptyGenerator("compatibility needs a nonempty J")
    return contractible_mask(poset, poset.down_closure(mask))


def homotopy_equivalent(P: FinitePoset, Q: FinitePoset) -> bool:
    return is_isomorphic(core(P).core, core(Q).core)
