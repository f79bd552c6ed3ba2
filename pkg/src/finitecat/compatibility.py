"""Compatibility structures and the greedy bound algorithms.

A set ``J`` of universe points is compatible when ``U_J`` is contractible
(for mode ``cat_h1``: when every component of ``U_J`` is acyclic).  The
universe depends on the mode:

========  =====================  =====================
mode      space                  universe
========  =====================  =====================
gcat      X                      all points of X
gcat_p    X                      Max(X)
cat_u     core X_0               all points of X_0
cat_h1    X (height <= 1)        Max(X)
========  =====================  =====================
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterable, Sequence

from .bits import to_mask
from .budget import Budget, default_budget
from .errors import BadParameter, BudgetExceeded
from .homotopy import ContractibilityOracle, core
from .hypergraph import BooleanCompatibility
from .poset import FinitePoset

MODES = ("gcat", "gcat_p", "cat_u", "cat_h1")
_ALIASES = {"gcatp": "gcat_p", "catu": "cat_u", "cath1": "cat_h1", "cat": "cat_h1"}


def normalize_mode(mode: str) -> str:
    mode = _ALIASES.get(mode, mode)
    if mode not in MODES:
        raise BadParameter(f"unknown mode {mode!r}; expected one of {', '.join(MODES)}")
    return mode


class Compatibility:
    """Compatibility predicate of one mode, with a query counter.

    ``calls`` counts invocations of the contractibility test (cache hits
    included), which is what the algorithm contracts are stated in.
    """

    def __init__(self, poset: FinitePoset, mode: str):
        self.mode = normalize_mode(mode)
        if self.mode == "cat_u":
            self.space = core(poset).core
        else:
            self.space = poset
        if self.mode in ("gcat_p", "cat_h1"):
            self.universe = self.space.maximal
        else:
            self.universe = tuple(range(self.space.n))
        if self.mode == "cat_h1":
            from .height_one import acyclic_mask, require_height_one

            require_height_one(self.space)
            self._test = lambda mask: acyclic_mask(self.space, mask)
        else:
            self._oracle = ContractibilityOracle(self.space)
            self._test = self._oracle
        self.calls = 0

    def __call__(self, J: Iterable[int]) -> bool:
        self.calls += 1
        return self._test(self.space.down_closure(to_mask(J)))

    def quiet(self, J: Iterable[int]) -> bool:
        return self._test(self.space.down_closure(to_mask(J)))

    def boolean(self) -> BooleanCompatibility:
        """The same structure as a label-level Boolean function (0 = compatible)."""
        labels = self.space.labels
        index = {labels[i]: i for i in self.universe}

        def predicate(subset: frozenset) -> int:
            return 0 if self.quiet(index[a] for a in subset) else 1

        return BooleanCompatibility(tuple(labels[i] for i in self.universe), predicate)


def compatibility_function(poset: FinitePoset, mode: str) -> BooleanCompatibility:
    return Compatibility(poset, mode).boolean()


def colex(items: Sequence[int], k: int) -> list[tuple[int, ...]]:
    """``k``-subsets of ``items`` in colex order (by position in ``items``)."""
    return sorted(combinations(items, k), key=lambda c: [items.index(x) for x in reversed(c)])


# -- CompatibilityTable ----------------------------------------------------------
@dataclass
class CompatibilityTable:
    mode: str
    space: FinitePoset
    universe: tuple[int, ...]
    entries: dict[frozenset, bool] = field(default_factory=dict)
    complete_up_to: int = 0

    def sigma(self, J: Iterable[int]) -> int:
        return 0 if self.entries[frozenset(J)] else 1

    def compatible_sets(self, min_size: int = 1) -> list[frozenset]:
        return [J for J, ok in self.entries.items() if ok and len(J) >= min_size]

    def lines(self) -> list[str]:
        """Export: one ``{a,b,c}:0|1`` line per evaluated subset (0 = compatible)."""
        lab = self.space.labels
        out = []
        for J, ok in self.entries.items():
            names = ",".join(lab[i] for i in sorted(J, key=self.universe.index))
            out.append(f"{{{names}}}:{0 if ok else 1}")
        return out


def enumerate_compatibility(poset: FinitePoset, mode: str, max_length: int,
                            table: CompatibilityTable | None = None,
                            budget: Budget | None = None,
                            compat: Compatibility | None = None) -> CompatibilityTable:
    """Evaluate every universe subset of size <= ``max_length`` (colex per size).

    Passing an earlier ``table`` extends it in place without touching the
    entries already present.
    """
    budget = budget or default_budget()
    compat = compat or Compatibility(poset, mode)
    n = len(compat.universe)
    if not 0 <= max_length <= n:
        raise BadParameter(f"max_length must lie in [0, {n}]")
    if table is None:
        table = CompatibilityTable(compat.mode, compat.space, compat.universe)
    start = table.complete_up_to + 1
    count = sum(math.comb(n, k) for k in range(1, max_length + 1))
    if count > budget.max_candidates:
        raise BudgetExceeded(f"{count} subsets exceed the candidate budget {budget.max_candidates}")
    for k in range(start, max_length + 1):
        for J in colex(compat.universe, k):
            key = frozenset(J)
            if key not in table.entries:
                table.entries[key] = compat(J)
        table.complete_up_to = k
    return table


# -- CoverReport --------------------------------------------------------------------
@dataclass(frozen=True)
class CoverReport:
    cover: tuple[frozenset, ...]
    mode: str
    is_exact: bool
    space: FinitePoset
    universe: tuple[int, ...]
    evaluated: int = 0
    ct_calls: int = 0
    compatible: tuple[frozenset, ...] = ()

    @property
    def size(self) -> int:
        return len(self.cover)

    @property
    def bound_kind(self) -> str:
        return "exact" if self.is_exact else "upper"

    def labelled(self) -> list[list[str]]:
        lab = self.space.labels
        return [[lab[i] for i in sorted(J, key=self.universe.index)] for J in self.cover]


def _with_singletons(J: Iterable[int], universe: Sequence[int]) -> tuple[frozenset, ...]:
    J = frozenset(J)
    return (J,) + tuple(frozenset([x]) for x in universe if x not in J)


# -- OP: u_algorithm ----------------------------------------------------------------
def u_algorithm(poset: FinitePoset, mode: str = "gcat", stop_length: int | None = None) -> CoverReport:
    """Test all subsets of length 2, 3, ..., ``stop_length``.

    A compatible subset of length ``k`` gives the bound ``n - k + 1`` (the
    set plus the remaining singletons).  Every subset up to ``stop_length`` is
    evaluated and all compatible ones are retained.
    """
    compat = Compatibility(poset, mode)
    U = compat.universe
    n = len(U)
    if stop_length is None:
        stop_length = n
    if n == 1:
        return CoverReport((frozenset(U),), compat.mode, True, compat.space, U)
    if not 2 <= stop_length <= n:
        raise BadParameter(f"stop_length must lie in [2, {n}]")
    best_J: tuple[int, ...] = ()
    found = []
    evaluated = 0
    full_compatible = None
    for k in range(2, stop_length + 1):
        first = None
        for J in colex(U, k):
            evaluated += 1
            if compat(J):
                found.append(frozenset(J))
                if first is None:
                    first = J
        if k == n:
            full_compatible = first is not None
        if first is not None:
            best_J = first
    if best_J:
        bound = n - len(best_J) + 1
        cover = _with_singletons(best_J, U)
    else:
        bound = n
        cover = tuple(frozenset([x]) for x in U)
    exact = bound == 1 or (stop_length == n and (bound == 2 or not best_J) and not full_compatible)
    return CoverReport(cover, compat.mode, exact, compat.space, U, evaluated, compat.calls, tuple(found))


# -- OP: d_algorithm -----------------------------------------------------------------
def d_algorithm(poset: FinitePoset, mode: str = "gcat", stop_length: int = 1) -> CoverReport:
    """Test lengths ``n, n-1, ...`` and stop at the first compatible subset."""
    compat = Compatibility(poset, mode)
    U = compat.universe
    n = len(U)
    if stop_length < 1:
        raise BadParameter("stop_length must be >= 1")
    evaluated = 0
    for k in range(n, max(stop_length, 1) - 1, -1):
        for J in colex(U, k):
            evaluated += 1
            if compat(J):
                # nothing longer was compatible, so the bound n-k+1 is tight when k >= n-1
                # or when only singletons remain
                exact = k >= n - 1 or k == 1
                return CoverReport(_with_singletons(J, U), compat.mode, exact, compat.space, U,
                                   evaluated, compat.calls, (frozenset(J),))
    cover = tuple(frozenset([x]) for x in U)
    return CoverReport(cover, compat.mode, stop_length <= 2, compat.space, U, evaluated, compat.calls)


# -- OP: heuristic1 ------------------------------------------------------------------
def heuristic1(poset: FinitePoset, mode: str = "gcat", ordering: Sequence[int] | None = None,
               skip_one: bool = False) -> CoverReport:
    """Greedy prefix sweep along ``ordering``.

    Grow a block while it stays compatible; the first point that breaks it
    opens the next block.  With ``skip_one`` a closing block also tries the
    point right after the breaking one before giving up.
    """
    compat = Compatibility(poset, mode)
    U = compat.universe
    order = list(U) if ordering is None else list(ordering)
    if sorted(order) != sorted(U):
        raise BadParameter("ordering must be a permutation of the universe")
    cover = []
    assigned = set()
    block: list[int] = []
    i = 0
    while i < len(order):
        x = order[i]
        if x in assigned:
            i += 1
            continue
        if not block:
            block = [x]
            assigned.add(x)
            i += 1
            continue
        if compat(block + [x]):
            block.append(x)
            assigned.add(x)
            i += 1
            continue
        if skip_one:
            nxt = next((y for y in order[i + 1:] if y not in assigned), None)
            if nxt is not None and compat(block + [nxt]):
                block.append(nxt)
                assigned.add(nxt)
        cover.append(frozenset(block))
        block = []
    if block:
        cover.append(frozenset(block))
    return CoverReport(tuple(cover), compat.mode, False, compat.space, U,
                       compat.calls, compat.calls)


# -- OP: heuristic2 ------------------------------------------------------------------
def default_h2_key(universe: Sequence[int]) -> Callable[[frozenset], tuple]:
    """Size descending, then colex."""
    def key(J: frozenset) -> tuple:
        return (-len(J), sorted((universe.index(x) for x in J), reverse=True))
    return key


def heuristic2(poset: FinitePoset, mode: str = "gcat", k: int = 1,
               ordering: Callable[[frozenset], object] | Sequence[Iterable[int]] | None = None,
               variant: str = "disjoint", budget: Budget | None = None) -> CoverReport:
    """Cover greedily from the compatible sets of size <= ``k``.

    ``ordering`` is a sort key over the compatible sets or an explicit list
    of them.  ``variant="disjoint"`` takes the next set disjoint from
    everything chosen; ``"covering"`` the next one adding a new point.
    """
    compat = Compatibility(poset, mode)
    U = compat.universe
    n = len(U)
    if not (1 <= k and 2 * k < n):
        raise BadParameter(f"k must satisfy 1 <= k < n/2 (n={n})")
    if variant not in ("disjoint", "covering"):
        raise BadParameter("variant must be 'disjoint' or 'covering'")
    table = enumerate_compatibility(poset, mode, k, budget=budget, compat=compat)
    family = table.compatible_sets()
    if ordering is None:
        family.sort(key=default_h2_key(U))
    elif callable(ordering):
        family.sort(key=ordering)
    else:
        listed = [frozenset(J) for J in ordering]
        missing = [J for J in listed if J not in table.entries or not table.entries[J]]
        if missing:
            raise BadParameter(f"ordering lists sets that are not compatible: {missing}")
        family = listed + [J for J in family if J not in set(listed)]
    universe = frozenset(U)
    covered: frozenset = frozenset()
    cover = []
    for J in family:
        if covered == universe:
            break
        if variant == "disjoint" and J & covered:
            continue
        if variant == "covering" and not J - covered:
            continue
        cover.append(J)
        covered |= J
    return CoverReport(tuple(cover), compat.mode, False, compat.space, U,
                       len(table.entries), compat.calls, tuple(family))
