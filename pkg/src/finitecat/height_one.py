"""Spaces of height one: acyclicity, exact category, arboricities, strongification.

At height one the Hasse diagram is a bipartite graph between minimal and
maximal points, and an open set is contractible in ``X`` exactly when each of
its components is a tree.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Hashable, Iterable, Sequence

from .bits import iter_bits
from .budget import Budget, default_budget
from .errors import (
    BudgetExceeded,
    Disconnected,
    HeightMismatch,
    IncompatibleCover,
    NotDominating,
    PreconditionViolated,
)
from .homotopy import contractible_mask, core
from .invariants import CategoryResult
from .poset import FinitePoset, OpenSubset, _as_mask, component_masks
from .setcover import exact_set_cover


def require_height_one(P: FinitePoset) -> None:
    if P.height > 1:
        raise HeightMismatch(f"expected height <= 1, got {P.height}")


def _edge_count(P: FinitePoset, mask: int) -> int:
    return sum((P.lower_covers(x) & mask).bit_count() for x in iter_bits(mask))


def acyclic_mask(P: FinitePoset, mask: int) -> bool:
    """Whether the Hasse diagram restricted to ``mask`` is a forest."""
    return _edge_count(P, mask) == mask.bit_count() - len(component_masks(P, mask))


# -- OP: contains_crown_cycle -------------------------------------------------------
def contains_crown_cycle(poset: FinitePoset, open_subset=None) -> bool:
    """Whether the comparability graph on the open set has a cycle."""
    require_height_one(poset)
    mask = poset.full_mask if open_subset is None else _as_mask(poset, open_subset)
    if poset.down_closure(mask) != mask:
        raise PreconditionViolated("subset is not open")
    return not acyclic_mask(poset, mask)


def _height_one_space(poset: FinitePoset) -> FinitePoset:
    """The poset itself at height <= 1, else its core when that has height <= 1."""
    if poset.height <= 1:
        return poset
    X0 = core(poset).core
    if X0.height > 1:
        raise HeightMismatch(f"core has height {X0.height}; need <= 1")
    return X0


# -- OP: cat_height1 -----------------------------------------------------------------
def cat_height1(poset: FinitePoset, budget: Budget | None = None) -> CategoryResult:
    """Least number of prime open sets with acyclic components that cover the space.

    Inputs of larger height are accepted when their core has height <= 1;
    the witness then refers to the core.
    """
    budget = budget or default_budget()
    X = _height_one_space(poset)
    if len(component_masks(X, X.full_mask)) != 1:
        raise Disconnected("cat of a height-one space needs a connected space")
    maxs = X.maximal
    if (1 << len(maxs)) - 1 > budget.max_candidates:
        raise BudgetExceeded(f"2^{len(maxs)} prime generators exceed the candidate budget")
    cands = []
    for sub in range(1, 1 << len(maxs)):
        J = 0
        for k in iter_bits(sub):
            J |= 1 << maxs[k]
        if acyclic_mask(X, X.down_closure(J)):
            cands.append(J)
    sol = exact_set_cover(X.max_mask, cands, budget.max_nodes)
    cover = tuple(sorted(X.down_closure(cands[k]) for k in sol.chosen))
    return CategoryResult(sol.size, cover, X)


# -- graphs ----------------------------------------------------------------------------
@dataclass(frozen=True)
class SimpleGraph:
    vertices: tuple
    edges: frozenset  # of frozenset pairs

    def __post_init__(self):
        vs = set(self.vertices)
        for e in self.edges:
            if len(e) != 2:
                raise PreconditionViolated(f"edge {set(e)} is a loop or malformed")
            if e - vs:
                raise PreconditionViolated(f"edge {set(e)} leaves the vertex set")

    @classmethod
    def from_pairs(cls, vertices: Iterable[Hashable], pairs: Iterable[tuple]) -> "SimpleGraph":
        return cls(tuple(vertices), frozenset(frozenset(p) for p in pairs))

    def neighbours(self, v) -> set:
        return {w for e in self.edges if v in e for w in e if w != v}

    def multiplicity(self, e: frozenset) -> int:
        return 1 if e in self.edges else 0


@dataclass(frozen=True)
class Multigraph:
    vertices: tuple
    # unordered pair -> multiplicity 1 or 2
    multiplicities: dict

    @property
    def edges(self) -> frozenset:
        return frozenset(self.multiplicities)

    def multiplicity(self, e: frozenset) -> int:
        return self.multiplicities.get(e, 0)

    def double_edges(self) -> list[frozenset]:
        return [e for e, k in self.multiplicities.items() if k >= 2]


def gamma_multigraph(poset: FinitePoset) -> Multigraph:
    """Maximal points, joined once per shared lower neighbour (capped at two)."""
    require_height_one(poset)
    maxs = poset.maximal
    mult = {}
    for v, w in combinations(maxs, 2):
        shared = (poset.below(v) & poset.below(w)).bit_count()
        if shared:
            mult[frozenset((poset.label(v), poset.label(w)))] = min(shared, 2)
    return Multigraph(tuple(poset.label(v) for v in maxs), mult)


def order_complex_graph(poset: FinitePoset) -> SimpleGraph:
    """1-skeleton of the order complex: comparable pairs."""
    pairs = [(poset.label(a), poset.label(b)) for a, b in poset.order_pairs()]
    return SimpleGraph.from_pairs(poset.labels, pairs)


def _forest(vertices: Sequence, edges: Sequence[frozenset]) -> bool:
    parent = {v: v for v in vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for e in edges:
        a, b = tuple(e)
        ra, rb = find(a), find(b)
        if ra == rb:
            return False
        parent[ra] = rb
    return True


@dataclass(frozen=True)
class PartitionResult:
    value: int
    exact: bool
    blocks: tuple[tuple, ...]


def _min_partition(items: Sequence, ok: Callable[[list], bool], exact: bool,
                   node_limit: int) -> PartitionResult:
    """Fewest blocks with ``ok`` true on each; ``ok`` must be closed under subsets."""
    greedy: list[list] = []
    for x in items:
        for b in greedy:
            if ok(b + [x]):
                b.append(x)
                break
        else:
            greedy.append([x])
    best = [list(b) for b in greedy]
    if not exact or len(best) <= 1:
        return PartitionResult(len(best), exact or len(best) <= 1, tuple(map(tuple, best)))
    nodes = 0

    def place(i: int, blocks: list[list], k: int) -> list[list] | None:
        nonlocal nodes
        nodes += 1
        if nodes > node_limit:
            raise BudgetExceeded("partition search exceeded the node budget")
        if i == len(items):
            return [list(b) for b in blocks]
        x = items[i]
        for b in blocks:
            if ok(b + [x]):
                b.append(x)
                found = place(i + 1, blocks, k)
                b.pop()
                if found:
                    return found
        if len(blocks) < k:
            blocks.append([x])
            found = place(i + 1, blocks, k)
            blocks.pop()
            return found
        return None

    try:
        for k in range(1, len(best)):
            found = place(0, [], k)
            if found is not None:
                best = found
                break
    except BudgetExceeded:
        return PartitionResult(len(best), False, tuple(map(tuple, best)))
    return PartitionResult(len(best), True, tuple(map(tuple, best)))


# -- OP: vertex_arboricity -------------------------------------------------------------
def vertex_arboricity(graph: SimpleGraph | Multigraph, budget: Budget | None = None,
                      exact_limit: int = 12) -> PartitionResult:
    """Fewest vertex classes each inducing a forest (a double edge counts as a cycle)."""
    budget = budget or default_budget()
    edges = list(graph.edges)
    doubles = {e for e in edges if graph.multiplicity(e) >= 2}
    adj: dict = {v: [] for v in graph.vertices}
    for e in edges:
        a, b = tuple(e)
        adj[a].append(e)
        adj[b].append(e)

    def ok(block: list) -> bool:
        inside = set(block)
        es = {e for v in block for e in adj[v] if e <= inside}
        return not (es & doubles) and _forest(block, list(es))

    order = sorted(graph.vertices, key=lambda v: (-len(adj[v]), graph.vertices.index(v)))
    return _min_partition(order, ok, len(order) <= exact_limit, budget.max_nodes)


# -- OP: d_arboricity ------------------------------------------------------------------
def d_arboricity(graph: SimpleGraph, D: Iterable[Hashable], budget: Budget | None = None,
                 exact_limit: int = 12) -> PartitionResult:
    """Fewest classes of ``D`` whose incident edges form a forest per class."""
    budget = budget or default_budget()
    D = list(dict.fromkeys(D))
    Dset = set(D)
    if Dset - set(graph.vertices):
        raise PreconditionViolated("D must consist of graph vertices")
    for v in graph.vertices:
        if v not in Dset and not graph.neighbours(v) & Dset:
            raise NotDominating(f"vertex {v!r} has no neighbour in D")
    incident = {v: [e for e in graph.edges if v in e] for v in D}

    def ok(block: list) -> bool:
        es = {e for v in block for e in incident[v]}
        verts = {u for e in es for u in e} | set(block)
        return _forest(list(verts), list(es))

    return _min_partition(D, ok, len(D) <= exact_limit, budget.max_nodes)


# -- OP: sanity_bounds_height1 ----------------------------------------------------------
@dataclass(frozen=True)
class Height1Bounds:
    va_order_complex: int
    cat: int
    a_max: int
    va_gamma: int

    @property
    def holds(self) -> bool:
        return self.va_order_complex <= self.cat == self.a_max <= self.va_gamma


def sanity_bounds_height1(poset: FinitePoset, budget: Budget | None = None) -> Height1Bounds:
    """``va(O(X)) <= cat(X) = a_Max(O(X)) <= va(Gamma(X))``, all computed exactly."""
    require_height_one(poset)
    G = order_complex_graph(poset)
    va_o = vertex_arboricity(G, budget)
    cat = cat_height1(poset, budget)
    a_max = d_arboricity(G, [poset.label(v) for v in poset.maximal], budget)
    va_g = vertex_arboricity(gamma_multigraph(poset), budget)
    out = Height1Bounds(va_o.value, cat.value, a_max.value, va_g.value)
    if va_o.exact and a_max.exact and va_g.exact and not out.holds:
        raise PreconditionViolated(f"height-one inequalities fail: {out}")
    return out


# -- OP: zigzag_path -------------------------------------------------------------------
def zigzag_path(poset: FinitePoset, p: int, q: int) -> tuple[int, ...]:
    """Shortest path ``p < x1 > x2 < ... > q`` alternating minimal and maximal points.

    Breadth-first with neighbours in index order, so the result is
    deterministic and simple.
    """
    mins = poset.min_mask
    for x in (p, q):
        poset._check_index(x)
        if not mins >> x & 1:
            raise PreconditionViolated(f"{poset.label(x)!r} is not minimal")
    if p == q:
        return (p,)
    maxs = poset.max_mask
    prev = {p: None}
    queue = deque([p])
    while queue:
        u = queue.popleft()
        nbrs = poset.above(u) & maxs if mins >> u & 1 else poset.below(u) & mins
        for v in iter_bits(nbrs):
            if v not in prev:
                prev[v] = u
                if v == q:
                    path = [q]
                    while prev[path[-1]] is not None:
                        path.append(prev[path[-1]])
                    return tuple(reversed(path))
                queue.append(v)
    raise Disconnected(f"{poset.label(p)!r} and {poset.label(q)!r} lie in different components")


# -- OP: strongify ----------------------------------------------------------------------
@dataclass(frozen=True)
class StrongifyResult:
    space: FinitePoset
    # member masks of the open cover of ``space``
    cover: tuple[int, ...]
    added: tuple[str, ...]

    @property
    def opens(self) -> list[OpenSubset]:
        return [OpenSubset(self.space, m) for m in self.cover]


def _fresh_labels(taken: set[str]) -> Iterable[str]:
    k = 1
    while True:
        name = f"q{k}"
        if name not in taken:
            yield name
        k += 1


def strongify(poset: FinitePoset, cover: Sequence[Iterable[int]]) -> StrongifyResult:
    """Turn a cover by prime sets with acyclic components into one by contractible sets.

    Each member is given as a set of maximal indices ``J``.  While a member
    has several components, the two lowest ones are joined along a zigzag
    arc, inserting a new point ``q`` between each consecutive pair of arc
    minima and the arc maximum above them.  The result has the homotopy type
    of the input, height <= 2, and a cover with the same number of members.
    """
    require_height_one(poset)
    if len(component_masks(poset, poset.full_mask)) != 1:
        raise Disconnected("strongify needs a connected space")
    maxs = poset.max_mask
    members = []
    for J in cover:
        Jm = _as_mask(poset, J)
        if not Jm or Jm & ~maxs:
            raise PreconditionViolated("cover members must be nonempty sets of maximal points")
        U = poset.down_closure(Jm)
        if not acyclic_mask(poset, U):
            raise IncompatibleCover(f"member {poset.labels_of(Jm)} has a cyclic component")
        members.append(U)
    union = 0
    for U in members:
        union |= U
    if union != poset.full_mask:
        raise PreconditionViolated("the members do not cover the space")

    labels = list(poset.labels)
    below = [poset.below(i) for i in range(poset.n)]
    names = _fresh_labels(set(labels))
    added = []
    Y = poset
    while True:
        i = next((k for k, U in enumerate(members) if len(component_masks(Y, U)) > 1), None)
        if i is None:
            break
        comps = sorted(component_masks(Y, members[i]), key=lambda c: (c & -c))
        C1, C2 = comps[0], comps[1]
        ymins = Y.min_mask
        p = (C1 & ymins & -(C1 & ymins)).bit_length() - 1
        q = (C2 & ymins & -(C2 & ymins)).bit_length() - 1
        path = zigzag_path(Y, p, q)
        # trim to the part running from the last point of C1 to the next point of U_i - C1
        s = max(k for k in range(0, len(path), 2) if C1 >> path[k] & 1)
        rest = members[i] & ~C1
        t = next(k for k in range(s + 2, len(path), 2) if rest >> path[k] & 1)
        arc = path[s:t + 1]
        grow = 0
        for k in range(0, len(arc) - 2, 2):
            lo1, top, lo2 = arc[k], arc[k + 1], arc[k + 2]
            new = len(labels)
            name = next(names)
            labels.append(name)
            added.append(name)
            below.append(1 << lo1 | 1 << lo2)
            below[top] |= 1 << new
            grow |= 1 << lo1 | 1 << lo2 | 1 << new
            # every member containing the arc maximum must contain the new point to stay open
            for j in range(len(members)):
                if members[j] >> top & 1:
                    members[j] |= 1 << new
        members[i] |= grow
        Y = FinitePoset(labels, below, check=False)
    cover_out = tuple(members)
    for U in cover_out:
        if Y.down_closure(U) != U or not contractible_mask(Y, U):
            raise PreconditionViolated("strongified member is not a contractible open set")
    return StrongifyResult(Y, cover_out, tuple(added))
