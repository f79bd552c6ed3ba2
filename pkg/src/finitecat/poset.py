"""Finite posets viewed as finite T0-spaces.

Elements carry string labels and integer indices (label order).  The order is
stored as one bitmask per element holding the points strictly below it, so
``x`` lies in the minimal open set ``U_y`` exactly when bit ``x`` is set in
``below(y)`` or ``x == y``.  Open sets are down-sets.
"""
from __future__ import annotations

import graphlib
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .bits import iter_bits, to_mask
from .errors import (
    CycleDetected,
    DuplicateLabel,
    EmptyGenerator,
    EmptySubset,
    IndexOutOfRange,
    UnknownLabel,
)


class FinitePoset:
    """Immutable finite partial order.

    Build one with :func:`from_relations` (label pairs) or
    :meth:`from_below` (strict down-set masks).  All derived data is computed
    once in the constructor.
    """

    __slots__ = (
        "_labels", "_index", "_below", "_above", "_lower", "_upper",
        "_levels", "_pos", "_order", "_tbelow", "_tabove",
    )

    def __init__(self, labels: Sequence[str], below: Sequence[int], *, check: bool = True):
        labels = tuple(str(a) for a in labels)
        below = tuple(int(m) for m in below)
        n = len(labels)
        if len(below) != n:
            raise ValueError("labels and below masks differ in length")
        index = {}
        for i, a in enumerate(labels):
            if a in index:
                raise DuplicateLabel(f"duplicate label {a!r}")
            index[a] = i
        if check:
            full = (1 << n) - 1
            for i, m in enumerate(below):
                if m & ~full:
                    raise IndexOutOfRange(f"mask of {labels[i]!r} refers past element {n - 1}")
                if m >> i & 1:
                    raise CycleDetected(f"{labels[i]!r} lies below itself")
                for j in iter_bits(m):
                    if below[j] & ~m:
                        raise ValueError(f"relation is not transitive at {labels[j]!r} < {labels[i]!r}")
        self._labels = labels
        self._index = index
        self._below = below

        above = [0] * n
        for i, m in enumerate(below):
            for j in iter_bits(m):
                above[j] |= 1 << i
        self._above = tuple(above)

        lower = []
        for i, m in enumerate(below):
            implied = 0
            for j in iter_bits(m):
                implied |= below[j]
            lower.append(m & ~implied)
        upper = [0] * n
        for i, m in enumerate(lower):
            for j in iter_bits(m):
                upper[j] |= 1 << i
        self._lower = tuple(lower)
        self._upper = tuple(upper)

        # a linear extension: a strict down-set always has fewer points
        order = sorted(range(n), key=lambda i: (below[i].bit_count(), i))
        pos = [0] * n
        for p, i in enumerate(order):
            pos[i] = p
        levels = [0] * n
        for i in order:
            for j in iter_bits(lower[i]):
                levels[i] = max(levels[i], levels[j] + 1)
        self._levels = tuple(levels)
        self._order = tuple(order)
        self._pos = tuple(pos)
        self._tbelow = tuple(self._to_topo(below[i]) for i in order)
        self._tabove = tuple(self._to_topo(above[i]) for i in order)

    # -- construction -----------------------------------------------------
    @classmethod
    def from_below(cls, labels: Sequence[str], below: Sequence[int]) -> "FinitePoset":
        return cls(labels, below)

    # -- basic access -----------------------------------------------------
    @property
    def n(self) -> int:
        return len(self._labels)

    def __len__(self) -> int:
        return len(self._labels)

    @property
    def labels(self) -> tuple[str, ...]:
        return self._labels

    @property
    def full_mask(self) -> int:
        return (1 << len(self._labels)) - 1

    def index(self, label: str) -> int:
        try:
            return self._index[str(label)]
        except KeyError:
            raise UnknownLabel(f"unknown element {label!r}") from None

    def indices(self, labels: Iterable[str]) -> list[int]:
        return [self.index(a) for a in labels]

    def label(self, i: int) -> str:
        self._check_index(i)
        return self._labels[i]

    def labels_of(self, mask: int) -> list[str]:
        return [self._labels[i] for i in iter_bits(mask)]

    def _check_index(self, i: int) -> None:
        if not 0 <= i < len(self._labels):
            raise IndexOutOfRange(f"index {i} out of range for {len(self._labels)}-point poset")

    def below(self, i: int) -> int:
        """Mask of the points strictly below ``i``."""
        return self._below[i]

    def above(self, i: int) -> int:
        return self._above[i]

    def lower_covers(self, i: int) -> int:
        return self._lower[i]

    def upper_covers(self, i: int) -> int:
        return self._upper[i]

    def down_closure(self, mask: int) -> int:
        out = mask
        for i in iter_bits(mask):
            out |= self._below[i]
        return out

    def less(self, i: int, j: int) -> bool:
        return bool(self._below[j] >> i & 1)

    def leq(self, i: int, j: int) -> bool:
        return i == j or self.less(i, j)

    def comparable(self, i: int, j: int) -> bool:
        return i == j or self.less(i, j) or self.less(j, i)

    # -- relation views ---------------------------------------------------
    @property
    def strict_order(self) -> np.ndarray:
        """``out[i, j]`` is True iff ``i < j``."""
        return _masks_to_matrix(self._below)

    @property
    def covers(self) -> np.ndarray:
        """``out[i, j]`` is True iff ``j`` covers ``i`` (Hasse edge i -> j)."""
        return _masks_to_matrix(self._lower)

    def cover_pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for j in range(self.n) for i in iter_bits(self._lower[j])]

    def order_pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for j in range(self.n) for i in iter_bits(self._below[j])]

    # -- structure --------------------------------------------------------
    @property
    def maximal(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.n) if not self._above[i])

    @property
    def minimal(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.n) if not self._below[i])

    @property
    def max_mask(self) -> int:
        return to_mask(self.maximal)

    @property
    def min_mask(self) -> int:
        return to_mask(self.minimal)

    @property
    def levels(self) -> tuple[int, ...]:
        return self._levels

    @property
    def height(self) -> int:
        return max(self._levels, default=0)

    @property
    def linear_extension(self) -> tuple[int, ...]:
        return self._order

    # -- topological index space -----------------------------------------
    # Masks in "topo" space index elements by their position in the linear
    # extension; there the maximum of a down-set is its highest bit.
    def _to_topo(self, mask: int) -> int:
        pos = self._pos
        out = 0
        for i in iter_bits(mask):
            out |= 1 << pos[i]
        return out

    def _from_topo(self, mask: int) -> int:
        order = self._order
        out = 0
        for p in iter_bits(mask):
            out |= 1 << order[p]
        return out

    # -- dunder -----------------------------------------------------------
    def __eq__(self, other) -> bool:
        if not isinstance(other, FinitePoset):
            return NotImplemented
        return self._labels == other._labels and self._below == other._below

    def __hash__(self) -> int:
        return hash((self._labels, self._below))

    def __repr__(self) -> str:
        edges = ", ".join(f"{self._labels[i]}<{self._labels[j]}" for i, j in self.cover_pairs())
        return f"FinitePoset([{', '.join(self._labels)}]; {edges})"


def _masks_to_matrix(masks: Sequence[int]) -> np.ndarray:
    n = len(masks)
    out = np.zeros((n, n), dtype=bool)
    for j, m in enumerate(masks):
        for i in iter_bits(m):
            out[i, j] = True
    return out


def _matrix_to_below(relation) -> list[int]:
    rel = np.asarray(relation, dtype=bool)
    if rel.ndim != 2 or rel.shape[0] != rel.shape[1]:
        raise ValueError("relation must be a square matrix")
    n = rel.shape[0]
    below = [0] * n
    for i, j in zip(*np.nonzero(rel)):
        below[int(j)] |= 1 << int(i)
    return below


def _closure_masks(n: int, direct_below: Sequence[int], labels: Sequence[str]) -> list[int]:
    sorter = graphlib.TopologicalSorter({j: tuple(iter_bits(direct_below[j])) for j in range(n)})
    try:
        order = list(sorter.static_order())
    except graphlib.CycleError as exc:
        cyc = [labels[i] for i in exc.args[1]]
        raise CycleDetected("order relation has a cycle: " + " < ".join(cyc)) from None
    closed = [0] * n
    for j in order:
        m = direct_below[j]
        for i in iter_bits(direct_below[j]):
            m |= closed[i]
        closed[j] = m
    return closed


# -- OP: from_relations ------------------------------------------------------
def from_relations(
    labels: Sequence[str],
    pairs: Iterable[tuple[str, str]],
    pairs_are_covers: bool = False,
) -> FinitePoset:
    """Build a poset from ``(a, b)`` pairs meaning ``a < b``.

    The pairs may be the Hasse diagram or any generating relation; the result
    is always normalized to the transitive closure (``pairs_are_covers`` is
    accepted for documentation purposes only).
    """
    labels = [str(a) for a in labels]
    index = {}
    for i, a in enumerate(labels):
        if a in index:
            raise DuplicateLabel(f"duplicate label {a!r}")
        index[a] = i
    direct = [0] * len(labels)
    for a, b in pairs:
        a, b = str(a), str(b)
        for x in (a, b):
            if x not in index:
                raise UnknownLabel(f"relation mentions undeclared element {x!r}")
        if a == b:
            raise CycleDetected(f"{a!r} < {a!r}")
        direct[index[b]] |= 1 << index[a]
    return FinitePoset(labels, _closure_masks(len(labels), direct, labels), check=False)


def transitive_closure(relation) -> np.ndarray:
    below = _matrix_to_below(relation)
    n = len(below)
    return _masks_to_matrix(_closure_masks(n, below, [str(i) for i in range(n)]))


# -- OP: transitive_reduction -----------------------------------------------
def transitive_reduction(strict_order) -> np.ndarray:
    """Hasse diagram of a strict partial order given as an ``n x n`` matrix.

    Keeps ``i < j`` unless some ``k`` has ``i < k < j``; quadratic in mask
    operations, cubic in bit operations.
    """
    below = _matrix_to_below(strict_order)
    out = []
    for m in below:
        implied = 0
        for k in iter_bits(m):
            implied |= below[k]
        out.append(m & ~implied)
    return _masks_to_matrix(out)


# -- OpenSubset ----------------------------------------------------------------
@dataclass(frozen=True)
class OpenSubset:
    """A down-closed subset, identified by its member mask."""

    poset: FinitePoset
    mask: int

    def __post_init__(self):
        if self.poset.down_closure(self.mask) != self.mask:
            raise ValueError("subset is not down-closed")

    @property
    def members(self) -> frozenset[int]:
        return frozenset(iter_bits(self.mask))

    @property
    def generators(self) -> tuple[int, ...]:
        """The antichain of maximal members."""
        m = self.mask
        return tuple(i for i in iter_bits(m) if not self.poset.above(i) & m)

    @property
    def labels(self) -> list[str]:
        return self.poset.labels_of(self.mask)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __contains__(self, i: int) -> bool:
        return bool(self.mask >> i & 1)

    def __repr__(self) -> str:
        gens = ",".join(self.poset.label(i) for i in self.generators)
        return f"U{{{gens}}}"


def _as_mask(poset: FinitePoset, items) -> int:
    if isinstance(items, OpenSubset):
        return items.mask
    if isinstance(items, int):
        if items < 0 or items >> poset.n:
            raise IndexOutOfRange(f"mask {items:#x} refers past element {poset.n - 1}")
        return items
    mask = 0
    for i in items:
        poset._check_index(i)
        mask |= 1 << i
    return mask


def min_open_set(poset: FinitePoset, x: int) -> OpenSubset:
    """``U_x``: the points below or equal to ``x``."""
    poset._check_index(x)
    return OpenSubset(poset, poset.below(x) | 1 << x)


def open_hull(poset: FinitePoset, J: Iterable[int]) -> OpenSubset:
    """``U_J``: the union of ``U_x`` over ``x`` in ``J``."""
    mask = _as_mask(poset, J)
    if not mask:
        raise EmptyGenerator("open_hull needs at least one generator")
    return OpenSubset(poset, poset.down_closure(mask))


@dataclass(frozen=True)
class Structure:
    maximal: tuple[int, ...]
    minimal: tuple[int, ...]
    height: int
    levels: tuple[int, ...]


def structure_queries(poset: FinitePoset) -> Structure:
    return Structure(poset.maximal, poset.minimal, poset.height, poset.levels)


def restrict_masks(poset: FinitePoset, mask: int) -> tuple[list[int], list[int]]:
    """Element list and strict down-set masks of the induced subposet (reindexed)."""
    keep = list(iter_bits(mask))
    new_index = {old: new for new, old in enumerate(keep)}
    below = []
    for old in keep:
        m = 0
        for j in iter_bits(poset.below(old) & mask):
            m |= 1 << new_index[j]
        below.append(m)
    return keep, below


def induced_subposet(poset: FinitePoset, members) -> FinitePoset:
    """Subspace on ``members``; covers are recomputed from the restricted order."""
    mask = _as_mask(poset, members)
    if not mask:
        raise EmptySubset("induced_subposet needs a nonempty subset")
    keep, below = restrict_masks(poset, mask)
    return FinitePoset([poset.labels[i] for i in keep], below, check=False)


def component_masks(poset: FinitePoset, mask: int) -> list[int]:
    """Connected components of the comparability graph restricted to ``mask``."""
    comps = []
    rest = mask
    while rest:
        seed = rest & -rest
        comp = seed
        frontier = seed
        while frontier:
            grow = 0
            for i in iter_bits(frontier):
                grow |= (poset.below(i) | poset.above(i))
            grow &= mask & ~comp
            comp |= grow
            frontier = grow
        comps.append(comp)
        rest &= ~comp
    return comps


def connected_components(poset: FinitePoset, members=None) -> list[frozenset[int]]:
    mask = poset.full_mask if members is None else _as_mask(poset, members)
    if not mask:
        raise EmptySubset("connected_components needs a nonempty subset")
    return [frozenset(iter_bits(c)) for c in component_masks(poset, mask)]


def is_connected(poset: FinitePoset) -> bool:
    return poset.n > 0 and len(component_masks(poset, poset.full_mask)) == 1
