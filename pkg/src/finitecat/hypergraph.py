"""Hypergraphs of compatibility structures: covering and transversal numbers.

A Boolean compatibility function ``sigma`` on subsets of a universe ``Z``
(0 = compatible) yields the hypergraph ``H(sigma)`` whose hyperedges are the
nonempty compatible sets; the sigma-category of ``Z`` is its covering number.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Hashable, Iterable, Mapping, Sequence

from .bits import iter_bits
from .budget import Budget, default_budget
from .errors import BudgetExceeded, PreconditionViolated, UncoverableVertex
from .setcover import exact_set_cover, greedy_set_cover


@dataclass(frozen=True)
class Hypergraph:
    vertices: tuple
    edges: tuple[frozenset, ...]

    def __init__(self, vertices: Iterable[Hashable], edges: Iterable[Iterable[Hashable]]):
        verts = tuple(dict.fromkeys(vertices))
        es = tuple(frozenset(e) for e in edges)
        vset = set(verts)
        for e in es:
            if not e:
                raise PreconditionViolated("hyperedges must be nonempty")
            if e - vset:
                raise PreconditionViolated(f"hyperedge mentions unknown vertices {sorted(map(str, e - vset))}")
        covered = set().union(*es) if es else set()
        missing = [v for v in verts if v not in covered]
        if missing:
            raise UncoverableVertex(f"vertices in no hyperedge: {missing}")
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", es)

    @classmethod
    def from_edges(cls, edges: Iterable[Iterable[Hashable]]) -> "Hypergraph":
        """Vertex set taken as the union of the edges, in first-seen order."""
        edges = [list(e) for e in edges]
        verts = [v for e in edges for v in e]
        return cls(verts, edges)

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    def _masks(self) -> tuple[dict, list[int]]:
        pos = {v: i for i, v in enumerate(self.vertices)}
        masks = []
        for e in self.edges:
            m = 0
            for v in e:
                m |= 1 << pos[v]
            masks.append(m)
        return pos, masks

    def degree(self, v) -> int:
        return sum(v in e for e in self.edges)


@dataclass(frozen=True)
class HypergraphResult:
    value: int
    exact: bool
    lower: int
    # hyperedges for covers, vertices for transversals
    witness: tuple


# -- OP: sperner_reduction -------------------------------------------------------
def sperner_reduction(H: Hypergraph) -> Hypergraph:
    """Keep the inclusion-maximal hyperedges (first copy of duplicates)."""
    kept: list[frozenset] = []
    for i, e in enumerate(H.edges):
        if any(e < f for f in H.edges):
            continue
        if e in kept:
            continue
        kept.append(e)
    return Hypergraph(H.vertices, kept)


# -- OP: covering_number -----------------------------------------------------------
def covering_number(H: Hypergraph, budget: Budget | None = None) -> HypergraphResult:
    budget = budget or default_budget()
    _, masks = H._masks()
    target = (1 << H.n) - 1
    try:
        sol = exact_set_cover(target, masks, budget.max_nodes)
    except BudgetExceeded as exc:
        chosen = exc.witness or tuple(sorted(greedy_set_cover(target, masks)))
        return HypergraphResult(len(chosen), False, exc.lower or 1, tuple(H.edges[i] for i in chosen))
    return HypergraphResult(sol.size, True, sol.size, tuple(H.edges[i] for i in sol.chosen))


# -- OP: transversal_number --------------------------------------------------------
def transversal_number(H: Hypergraph, budget: Budget | None = None) -> HypergraphResult:
    """Minimum hitting set by its own branch and bound (independent of set cover)."""
    budget = budget or default_budget()
    pos, masks = H._masks()
    if not masks:
        return HypergraphResult(0, True, 0, ())
    # an edge containing another is hit whenever the smaller one is
    minimal = []
    for i, m in enumerate(masks):
        if any((o & ~m) == 0 and (o != m or j < i) for j, o in enumerate(masks) if j != i):
            continue
        minimal.append(m)
    E = len(minimal)
    hits = [0] * H.n  # vertex -> mask over minimal edges
    for k, m in enumerate(minimal):
        for v in iter_bits(m):
            hits[v] |= 1 << k
    all_edges = (1 << E) - 1

    def greedy(unhit: int) -> list[int]:
        out = []
        while unhit:
            v = max(range(H.n), key=lambda v: ((hits[v] & unhit).bit_count(), -v))
            out.append(v)
            unhit &= ~hits[v]
        return out

    def packing(unhit: int) -> int:
        # pairwise vertex-disjoint unhit edges each need their own vertex
        used = 0
        count = 0
        for k in sorted(iter_bits(unhit), key=lambda k: (minimal[k].bit_count(), k)):
            if not minimal[k] & used:
                used |= minimal[k]
                count += 1
        return count

    best = greedy(all_edges)
    root_lower = packing(all_edges)
    chosen: list[int] = []
    nodes = 0

    class Stop(Exception):
        pass

    def dfs(unhit: int) -> None:
        nonlocal best, nodes
        nodes += 1
        if nodes > budget.max_nodes:
            raise Stop
        if not unhit:
            if len(chosen) < len(best):
                best = list(chosen)
            return
        if len(chosen) + packing(unhit) >= len(best):
            return
        k = min(iter_bits(unhit), key=lambda k: (minimal[k].bit_count(), k))
        for v in sorted(iter_bits(minimal[k]), key=lambda v: (-(hits[v] & unhit).bit_count(), v)):
            chosen.append(v)
            dfs(unhit & ~hits[v])
            chosen.pop()
            if len(best) == root_lower:
                return

    exact = True
    if len(best) > root_lower:
        try:
            dfs(all_edges)
        except Stop:
            exact = False
    witness = tuple(H.vertices[v] for v in sorted(best))
    return HypergraphResult(len(best), exact, len(best) if exact else root_lower, witness)


# -- OP: dual_hypergraph ---------------------------------------------------------------
def dual_hypergraph(H: Hypergraph, names: Sequence[Hashable] | None = None) -> Hypergraph:
    """Vertices are the hyperedges (by index, or ``names``); one edge per vertex of H."""
    names = list(names) if names is not None else list(range(H.m))
    if len(names) != H.m:
        raise PreconditionViolated("need one name per hyperedge")
    duals = []
    for v in H.vertices:
        e = frozenset(names[k] for k, edge in enumerate(H.edges) if v in edge)
        if e not in duals:
            duals.append(e)
    return Hypergraph(names, duals)


# -- Boolean compatibility --------------------------------------------------------------
@dataclass(frozen=True)
class BooleanCompatibility:
    """``sigma``: subsets of ``universe`` -> {0, 1}, 0 meaning compatible.

    Supply either ``predicate`` (called on frozensets) or ``table``; subsets
    missing from a table count as incompatible.  The empty set is always
    compatible.
    """

    universe: tuple
    predicate: Callable[[frozenset], int] | None = None
    table: Mapping[frozenset, int] | None = field(default=None, hash=False)

    def sigma(self, subset: Iterable[Hashable]) -> int:
        s = frozenset(subset)
        if not s:
            return 0
        if self.predicate is not None:
            return int(self.predicate(s))
        if self.table is not None:
            return int(self.table.get(s, 1))
        raise PreconditionViolated("compatibility needs a predicate or a table")


def from_compatibility(compat: BooleanCompatibility, max_size: int | None = None,
                       budget: Budget | None = None) -> Hypergraph:
    """``H(sigma)``: every nonempty compatible subset (up to ``max_size`` points)."""
    budget = budget or default_budget()
    Z = compat.universe
    top = len(Z) if max_size is None else min(max_size, len(Z))
    total = sum(math.comb(len(Z), k) for k in range(1, top + 1))
    if total > budget.max_candidates:
        raise BudgetExceeded(f"{total} subsets exceed the candidate budget {budget.max_candidates}")
    edges = []
    for k in range(1, top + 1):
        for combo in combinations(Z, k):
            if compat.sigma(combo) == 0:
                edges.append(frozenset(combo))
    covered = set().union(*edges) if edges else set()
    missing = [z for z in Z if z not in covered]
    if missing:
        raise UncoverableVertex(f"no compatible set contains {missing}")
    return Hypergraph(Z, edges)


@dataclass(frozen=True)
class SigmaCategory:
    lower: int
    upper: int
    witness: tuple[frozenset, ...]

    @property
    def exact(self) -> bool:
        return self.lower == self.upper

    @property
    def value(self) -> int:
        if not self.exact:
            raise ValueError(f"only bounded: [{self.lower}, {self.upper}]")
        return self.upper


def sigma_category(compat: BooleanCompatibility, budget: Budget | None = None,
                   max_size: int | None = None) -> SigmaCategory:
    """Covering number of ``H(sigma)``; an interval when hyperedges are capped."""
    H = from_compatibility(compat, max_size=max_size, budget=budget)
    res = covering_number(H, budget)
    complete = max_size is None or max_size >= len(compat.universe)
    if complete:
        return SigmaCategory(res.lower, res.value, res.witness)
    if compat.sigma(compat.universe) == 0:
        return SigmaCategory(1, 1, (frozenset(compat.universe),))
    return SigmaCategory(min(2, res.value), res.value, res.witness)


# -- OP: covering_bounds ---------------------------------------------------------------------
@dataclass(frozen=True)
class CoveringBounds:
    lower: float
    upper: float
    upper_meaningful: bool


def covering_bounds(H: Hypergraph, a: int, b: int, l: int) -> CoveringBounds:
    """``n/a <= rho(H) <= ln(m l / b n) / ln(1 - b/n) + (m/b) * H_l``, evaluated literally.

    Every vertex must lie in at least ``b >= 1`` hyperedges and every
    hyperedge must have at most ``a`` vertices.  The upper value is flagged
    when it comes out negative or non-finite.
    """
    n, m = H.n, H.m
    if not isinstance(l, int) or l < 1:
        raise PreconditionViolated("l must be a positive integer")
    if b < 1 or a < 1:
        raise PreconditionViolated("a and b must be positive")
    if any(len(e) > a for e in H.edges):
        raise PreconditionViolated(f"some hyperedge has more than a={a} vertices")
    if any(H.degree(v) < b for v in H.vertices):
        raise PreconditionViolated(f"some vertex lies in fewer than b={b} hyperedges")
    lower = n / a
    harmonic = sum(1.0 / j for j in range(1, l + 1))
    ratio = 1.0 - b / n
    if ratio <= 0.0:
        upper = math.nan
    else:
        upper = math.log(m * l / (b * n)) / math.log(ratio) + (m / b) * harmonic
    meaningful = math.isfinite(upper) and upper >= 0
    return CoveringBounds(lower, upper, meaningful)
