"""Order complexes, face posets and subdivision.

``sd X = F(O(X))`` is the poset of nonempty chains of ``X`` ordered by
inclusion.  Its elements are labelled by their chains, written bottom to top
as ``(a,b,c)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Hashable, Iterable, Iterator

from .bits import iter_bits
from .budget import Budget, default_budget
from .errors import BadParameter, PreconditionViolated, SizeBudgetExceeded
from .poset import FinitePoset


@dataclass(frozen=True)
class SimplicialComplex:
    """A complex stored as its full simplex family (closed under nonempty subsets)."""

    vertices: tuple
    simplices: frozenset  # of frozensets

    def __post_init__(self):
        vs = set(self.vertices)
        for s in self.simplices:
            if not s or s - vs:
                raise PreconditionViolated(f"bad simplex {sorted(map(str, s))}")
            if len(s) > 1:
                for v in s:
                    if s - {v} not in self.simplices:
                        raise PreconditionViolated("simplex family is not closed under faces")
        for v in vs:
            if frozenset([v]) not in self.simplices:
                raise PreconditionViolated(f"vertex {v!r} is not a simplex")

    @classmethod
    def from_facets(cls, facets: Iterable[Iterable[Hashable]]) -> "SimplicialComplex":
        facets = [tuple(dict.fromkeys(f)) for f in facets]
        verts = tuple(dict.fromkeys(v for f in facets for v in f))
        simplices = set()
        for f in facets:
            for k in range(1, len(f) + 1):
                simplices.update(frozenset(c) for c in combinations(f, k))
        return cls(verts, frozenset(simplices))

    @property
    def dimension(self) -> int:
        return max((len(s) for s in self.simplices), default=0) - 1

    def faces(self, k: int) -> list[frozenset]:
        """The ``k``-dimensional simplices."""
        return [s for s in self.simplices if len(s) == k + 1]

    def facets(self) -> list[frozenset]:
        return [s for s in self.simplices if not any(s < t for t in self.simplices)]

    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(self.faces(k)) for k in range(self.dimension + 1))

    def edges(self) -> list[tuple]:
        return [tuple(s) for s in self.faces(1)]

    def lines(self) -> list[str]:
        """Export: one simplex per line, vertices comma separated, by size then order."""
        pos = {v: i for i, v in enumerate(self.vertices)}
        ordered = sorted(self.simplices, key=lambda s: (len(s), sorted(pos[v] for v in s)))
        return [",".join(str(v) for v in sorted(s, key=pos.get)) for s in ordered]


def iter_chains(P: FinitePoset) -> Iterator[tuple[int, ...]]:
    """Nonempty chains as index tuples listed bottom to top."""
    def grow(chain: tuple[int, ...], top: int) -> Iterator[tuple[int, ...]]:
        yield chain
        for j in iter_bits(P.above(top)):
            yield from grow(chain + (j,), j)

    for i in P.linear_extension:
        yield from grow((i,), i)


def chain_count(P: FinitePoset) -> int:
    """Number of nonempty chains, by dynamic programming over a linear extension."""
    ending = [0] * P.n
    for i in P.linear_extension:
        ending[i] = 1 + sum(ending[j] for j in iter_bits(P.below(i)))
    return sum(ending)


# -- OP: order_complex --------------------------------------------------------------
def order_complex(poset: FinitePoset) -> SimplicialComplex:
    simplices = frozenset(frozenset(poset.label(i) for i in c) for c in iter_chains(poset))
    return SimplicialComplex(poset.labels, simplices)


# -- OP: face_poset -----------------------------------------------------------------
def _simplex_label(s: frozenset, pos: dict) -> str:
    return "(" + ",".join(str(v) for v in sorted(s, key=pos.get)) + ")"


def face_poset(K: SimplicialComplex, labels: dict | None = None) -> FinitePoset:
    """Simplices ordered by proper inclusion.

    Labels default to the vertex list in the complex's vertex order; pass
    ``labels`` (simplex -> label) to override.
    """
    pos = {v: i for i, v in enumerate(K.vertices)}
    simplices = sorted(K.simplices, key=lambda s: (len(s), sorted(pos[v] for v in s)))
    index = {s: i for i, s in enumerate(simplices)}
    below = []
    for s in simplices:
        m = 0
        for k in range(1, len(s)):
            for face in combinations(s, k):
                m |= 1 << index[frozenset(face)]
        below.append(m)
    names = [labels[s] if labels else _simplex_label(s, pos) for s in simplices]
    return FinitePoset(names, below, check=False)


def sd(poset: FinitePoset) -> FinitePoset:
    """``F(O(X))`` with chains labelled bottom to top."""
    chains = sorted(iter_chains(poset), key=lambda c: (len(c), [poset._pos[i] for i in reversed(c)]))
    index = {frozenset(c): k for k, c in enumerate(chains)}
    below = []
    for c in chains:
        m = 0
        for k in range(1, len(c)):
            for face in combinations(c, k):
                m |= 1 << index[frozenset(face)]
        below.append(m)
    names = ["(" + ",".join(poset.label(i) for i in c) + ")" for c in chains]
    return FinitePoset(names, below, check=False)


# -- OP: subdivide --------------------------------------------------------------------
def subdivide(poset: FinitePoset, k: int, budget: Budget | None = None) -> FinitePoset:
    """``sd^k X``; refuses to build anything beyond the size budget."""
    if k < 0:
        raise BadParameter("k must be >= 0")
    budget = budget or default_budget()
    P = poset
    for _ in range(k):
        size = chain_count(P)
        if size > budget.max_size:
            raise SizeBudgetExceeded(f"next subdivision would have {size} points (cap {budget.max_size})")
        P = sd(P)
    return P


# -- OP: barycentric_subdivision -------------------------------------------------------
def barycentric_subdivision(K: SimplicialComplex) -> SimplicialComplex:
    """Vertices are the simplices of ``K``; simplices are chains of faces."""
    return order_complex(face_poset(K))


def chain_bijection(poset: FinitePoset) -> dict[str, str]:
    """Vertex of ``O(sd X)`` -> vertex of ``sd O(X)``; both stand for a chain of ``X``."""
    pos = {a: i for i, a in enumerate(poset.labels)}
    out = {}
    for c in iter_chains(poset):
        name = "(" + ",".join(poset.label(i) for i in c) + ")"
        out[name] = _simplex_label(frozenset(poset.label(i) for i in c), pos)
    return out


def is_simplicial_isomorphism(K: SimplicialComplex, L: SimplicialComplex, mapping: dict) -> bool:
    """Whether ``mapping`` (vertices of K -> vertices of L) is a bijection on simplices."""
    if len(K.vertices) != len(L.vertices) or set(mapping) != set(K.vertices):
        return False
    if set(mapping.values()) != set(L.vertices):
        return False
    image = {frozenset(mapping[v] for v in s) for s in K.simplices}
    return image == set(L.simplices)


def complexes_isomorphic(K: SimplicialComplex, L: SimplicialComplex, limit: int = 64) -> bool:
    """Brute-force complex isomorphism through the face posets."""
    from .isomorphism import is_isomorphic

    if K.f_vector() != L.f_vector():
        return False
    if len(K.simplices) > limit:
        raise SizeBudgetExceeded(f"complex isomorphism limited to {limit} simplices")
    return is_isomorphic(face_poset(K), face_poset(L), limit=None)
