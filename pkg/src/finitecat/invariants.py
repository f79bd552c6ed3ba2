"""Exact geometric categories by set cover over contractible open sets.

Every open set is ``U_J`` for the antichain ``J`` of its maximal points, so
the candidates are the contractible down-closures of antichains (of prime
generators ``J`` in ``Max(X)`` for ``gcat_p``).  A family of open sets covers
``X`` exactly when it covers ``Max(X)``, which is the set-cover target.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .bits import iter_bits
from .budget import Budget, default_budget
from .errors import BudgetExceeded, FiniteCatError, PreconditionViolated
from .homotopy import ContractibilityOracle, core
from .poset import FinitePoset, OpenSubset, component_masks
from .setcover import exact_set_cover


@dataclass(frozen=True)
class CategoryResult:
    value: int
    # member masks of the covering open sets
    cover: tuple[int, ...]
    space: FinitePoset

    @property
    def opens(self) -> list[OpenSubset]:
        return [OpenSubset(self.space, m) for m in self.cover]

    def generators(self) -> list[list[str]]:
        """Each member as the labels of its maximal points."""
        return [[self.space.label(i) for i in u.generators] for u in self.opens]


@dataclass(frozen=True)
class Estimate:
    """An exact value (``lower == upper``) or an interval from a budget fallback."""

    lower: int
    upper: int
    witness: tuple[int, ...] = ()

    @property
    def exact(self) -> bool:
        return self.lower == self.upper

    @property
    def value(self) -> int:
        if not self.exact:
            raise ValueError(f"only bounded: [{self.lower}, {self.upper}]")
        return self.upper

    def as_json(self) -> dict:
        if self.exact:
            return {"value": self.upper, "kind": "exact"}
        return {"lower": self.lower, "upper": self.upper, "kind": "bound"}

    def __str__(self) -> str:
        return str(self.upper) if self.exact else f"[{self.lower}, {self.upper}]"


def iter_antichains(P: FinitePoset, mask: int | None = None) -> Iterator[int]:
    """Nonempty antichains inside ``mask``, as masks, in a fixed DFS order."""
    full = P.full_mask if mask is None else mask
    elems = list(iter_bits(full))
    comparable = [P.below(i) | P.above(i) for i in range(P.n)]

    def extend(start: int, chosen: int, blocked: int) -> Iterator[int]:
        for k in range(start, len(elems)):
            x = elems[k]
            if blocked >> x & 1:
                continue
            now = chosen | 1 << x
            yield now
            yield from extend(k + 1, now, blocked | comparable[x])

    yield from extend(0, 0, 0)


def _candidates(P: FinitePoset, S: int, oracle: ContractibilityOracle, budget: Budget,
                prime: bool) -> list[int]:
    """Contractible open subsets of the subspace ``S``."""
    out = []
    if prime:
        maxs = [i for i in iter_bits(S) if not P.above(i) & S]
        if (1 << len(maxs)) - 1 > budget.max_candidates:
            raise BudgetExceeded(f"2^{len(maxs)} prime generators exceed the candidate budget")
        for sub in range(1, 1 << len(maxs)):
            J = 0
            for k in iter_bits(sub):
                J |= 1 << maxs[k]
            U = P.down_closure(J) & S
            if oracle.peek(U):
                out.append(U)
        return out
    count = 0
    for J in iter_antichains(P, S):
        count += 1
        if count > budget.max_candidates:
            raise BudgetExceeded(f"more than {budget.max_candidates} open sets")
        U = P.down_closure(J) & S
        if oracle.peek(U):
            out.append(U)
    return out


def _solve(P: FinitePoset, S: int, oracle: ContractibilityOracle, budget: Budget,
           prime: bool) -> CategoryResult:
    if not S:
        raise PreconditionViolated("the empty space has no category")
    target = 0
    for i in iter_bits(S):
        if not P.above(i) & S:
            target |= 1 << i
    cands = _candidates(P, S, oracle, budget, prime)
    try:
        sol = exact_set_cover(target, cands, budget.max_nodes)
    except BudgetExceeded as exc:
        lower = max(exc.lower or 1, len(component_masks(P, S)))
        chosen = exc.witness
        raise BudgetExceeded(str(exc), lower=lower, upper=exc.upper,
                             witness=tuple(cands[k] for k in chosen)) from None
    return CategoryResult(sol.size, tuple(sorted(cands[k] for k in sol.chosen)), P)


# -- OP: gcat_exact ------------------------------------------------------------
def gcat_exact(poset: FinitePoset, budget: Budget | None = None,
               oracle: ContractibilityOracle | None = None, mask: int | None = None) -> CategoryResult:
    """Least number of contractible open sets covering the space.

    ``mask`` restricts to a subspace of ``poset`` (cover masks then refer to
    ``poset``); ``oracle`` lets several calls share one contractibility cache.
    Raises :class:`BudgetExceeded` carrying ``lower``/``upper`` bounds.
    """
    budget = budget or default_budget()
    oracle = oracle or ContractibilityOracle(poset)
    return _solve(poset, poset.full_mask if mask is None else mask, oracle, budget, prime=False)


# -- OP: gcat_p_exact -----------------------------------------------------------
def gcat_p_exact(poset: FinitePoset, budget: Budget | None = None,
                 oracle: ContractibilityOracle | None = None, mask: int | None = None) -> CategoryResult:
    """Least number of contractible prime open sets ``U_J`` (``J`` in Max) covering the space."""
    budget = budget or default_budget()
    oracle = oracle or ContractibilityOracle(poset)
    return _solve(poset, poset.full_mask if mask is None else mask, oracle, budget, prime=True)


# -- OP: cat_u --------------------------------------------------------------------
def cat_u(poset: FinitePoset, budget: Budget | None = None) -> CategoryResult:
    """Geometric category of the core (cover masks refer to the core)."""
    return gcat_exact(core(poset).core, budget)


# -- prime refinement ----------------------------------------------------------------
def prime_refinement(poset: FinitePoset, cover: Iterable[int]) -> tuple[int, ...]:
    """Replace each open set ``U`` by ``U_{Max(X) & U}``; never more members.

    Raises if the result fails to be a cover by prime sets refining the input.
    """
    cover = list(cover)
    maxs = poset.max_mask
    out = []
    for U in cover:
        if poset.down_closure(U) != U:
            raise PreconditionViolated("cover member is not open")
        J = U & maxs
        if not J:
            continue
        V = poset.down_closure(J)
        if V & ~U:
            raise FiniteCatError("prime hull escaped its open set")
        if V not in out:
            out.append(V)
    union = 0
    for V in out:
        union |= V
    if union != poset.full_mask:
        raise PreconditionViolated("input family does not cover the space")
    return tuple(out)


# -- OP: invariant_chain_report ----------------------------------------------------
@dataclass
class InvariantReport:
    gcat: Estimate
    gcat_p: Estimate
    cat_u: Estimate
    max_core: int
    max_all: int
    cat_h1: Estimate | None = None
    witnesses: dict[str, list[list[str]]] = field(default_factory=dict)

    @property
    def complete(self) -> bool:
        vals = [self.gcat, self.gcat_p, self.cat_u] + ([self.cat_h1] if self.cat_h1 else [])
        return all(v.exact for v in vals)

    def as_json(self) -> dict:
        out = {
            "gcat": self.gcat.as_json(),
            "gcat_p": self.gcat_p.as_json(),
            "cat_u": self.cat_u.as_json(),
            "max_core": {"value": self.max_core, "kind": "exact"},
            "max_all": {"value": self.max_all, "kind": "exact"},
        }
        if self.cat_h1 is not None:
            out["cat_h1"] = self.cat_h1.as_json()
        out["witnesses"] = self.witnesses
        return out


def _estimate(fn, P: FinitePoset, budget: Budget, fallback_upper: int, key: str,
              witnesses: dict, floor: int = 1) -> Estimate:
    try:
        res = fn(P, budget)
    except BudgetExceeded as exc:
        lower = max(exc.lower or 1, floor)
        upper = exc.upper if exc.upper is not None else fallback_upper
        return Estimate(lower, min(upper, fallback_upper))
    witnesses[key] = res.generators()
    return Estimate(res.value, res.value, res.cover)


def invariant_chain_report(poset: FinitePoset, budget: Budget | None = None) -> InvariantReport:
    """All computable invariants with ``cat_u <= gcat_p <= |Max(X_0)| <= |Max(X)|`` checked.

    Values that run out of budget degrade to intervals; ``cat_h1`` is only
    filled in when the core has height at most 1 and the space is connected.
    """
    from .height_one import cat_height1

    budget = budget or default_budget()
    X0 = core(poset).core
    max_core = len(X0.maximal)
    max_all = len(poset.maximal)
    witnesses: dict[str, list[list[str]]] = {}
    # a space that is not contractible needs at least two open sets
    floor = 1 if X0.n == 1 else 2
    g = _estimate(gcat_exact, poset, budget, max_all, "gcat", witnesses, floor)
    gp = _estimate(gcat_p_exact, poset, budget, max_all, "gcat_p", witnesses, floor)
    cu = _estimate(cat_u, poset, budget, max_core, "cat_u", witnesses, floor)
    h1 = None
    if X0.height <= 1 and len(component_masks(poset, poset.full_mask)) == 1:
        try:
            res = cat_height1(poset, budget)
            h1 = Estimate(res.value, res.value, res.cover)
            witnesses["cat_h1"] = res.generators()
        except BudgetExceeded as exc:
            h1 = Estimate(max(exc.lower or 1, floor), exc.upper or max_core)
    report = InvariantReport(g, gp, cu, max_core, max_all, h1, witnesses)
    if report.complete:
        chain = [cu.value, gp.value, max_core, max_all]
        if any(a > b for a, b in zip(chain, chain[1:])):
            raise FiniteCatError(f"inequality chain violated: {chain}")
        if h1 is not None and h1.value > cu.value:
            raise FiniteCatError(f"cat {h1.value} exceeds cat_u {cu.value}")
    return report

