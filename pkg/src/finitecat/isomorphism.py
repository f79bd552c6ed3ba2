"""Poset isomorphism by backtracking over invariant classes."""
from __future__ import annotations

from .bits import iter_bits
from .budget import default_budget
from .errors import SizeBudgetExceeded
from .poset import FinitePoset

_DEFAULT = object()


def _element_invariants(P: FinitePoset) -> list:
    n = P.n
    depth = [0] * n  # longest chain above the element
    for i in reversed(P.linear_extension):
        for j in iter_bits(P.upper_covers(i)):
            depth[i] = max(depth[i], depth[j] + 1)
    base = [
        (P.levels[i], depth[i], P.below(i).bit_count(), P.above(i).bit_count(),
         P.lower_covers(i).bit_count(), P.upper_covers(i).bit_count())
        for i in range(n)
    ]
    # one refinement round over the Hasse neighbourhood
    return [
        (base[i],
         tuple(sorted(base[j] for j in iter_bits(P.lower_covers(i)))),
         tuple(sorted(base[j] for j in iter_bits(P.upper_covers(i)))))
        for i in range(n)
    ]


def invariant_key(P: FinitePoset) -> tuple:
    """Isomorphism-invariant fingerprint; equal keys are necessary, not sufficient."""
    return (P.n, tuple(sorted(_element_invariants(P))))


def find_isomorphism(P: FinitePoset, Q: FinitePoset, limit=_DEFAULT) -> dict[int, int] | None:
    """Order isomorphism ``P -> Q`` as an index map, or ``None``.

    ``limit`` caps the poset size (default: the budget's ``max_iso``);
    ``None`` disables the cap.
    """
    if limit is _DEFAULT:
        limit = default_budget().max_iso
    if limit is not None and max(P.n, Q.n) > limit:
        raise SizeBudgetExceeded(f"isomorphism test limited to {limit} points")
    if P.n != Q.n:
        return None
    n = P.n
    if n == 0:
        return {}
    if len(P.cover_pairs()) != len(Q.cover_pairs()):
        return None
    inv_p = _element_invariants(P)
    inv_q = _element_invariants(Q)
    if sorted(inv_p) != sorted(inv_q):
        return None
    classes: dict = {}
    for j, key in enumerate(inv_q):
        classes.setdefault(key, []).append(j)
    cand = [classes[inv_p[i]] for i in range(n)]

    # assign comparable-to-assigned points early so pruning bites
    order = []
    placed = 0
    remaining = set(range(n))
    while remaining:
        def score(i):
            linked = (P.below(i) | P.above(i)) & placed
            return (0 if linked else 1, len(cand[i]), i)
        i = min(remaining, key=score)
        order.append(i)
        placed |= 1 << i
        remaining.remove(i)

    img = [-1] * n
    used = [False] * n

    def consistent(p: int, q: int, depth: int) -> bool:
        for t in range(depth):
            pp = order[t]
            qq = img[pp]
            if P.less(pp, p) != Q.less(qq, q) or P.less(p, pp) != Q.less(q, qq):
                return False
        return True

    def extend(depth: int) -> bool:
        if depth == n:
            return True
        p = order[depth]
        for q in cand[p]:
            if used[q] or not consistent(p, q, depth):
                continue
            img[p] = q
            used[q] = True
            if extend(depth + 1):
                return True
            used[q] = False
            img[p] = -1
        return False

    if extend(0):
        return {i: img[i] for i in range(n)}
    return None


def is_isomorphic(P: FinitePoset, Q: FinitePoset, limit=_DEFAULT) -> bool:
    return find_isomorphism(P, Q, limit) is not None


def is_order_isomorphism(P: FinitePoset, Q: FinitePoset, mapping: dict[int, int]) -> bool:
    """Independent check that ``mapping`` is a bijection preserving and reflecting ``<``."""
    if P.n != Q.n or sorted(mapping) != list(range(P.n)) or sorted(mapping.values()) != list(range(Q.n)):
        return False
    return all(
        P.less(a, b) == Q.less(mapping[a], mapping[b])
        for a in range(P.n) for b in range(P.n)
    )
