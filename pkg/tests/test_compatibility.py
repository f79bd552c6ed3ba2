from math import comb

import pytest

from finitecat import families as fam
from finitecat.compatibility import (
    Compatibility,
    colex,
    d_algorithm,
    enumerate_compatibility,
    heuristic1,
    heuristic2,
    normalize_mode,
    u_algorithm,
)
from finitecat.errors import BadParameter, BudgetExceeded
from finitecat.budget import Budget
from finitecat.homotopy import is_compatible
from finitecat.invariants import gcat_exact

from .corpus import small_corpus


def _covers_universe(rep):
    assert frozenset().union(*rep.cover) == frozenset(rep.universe)
    for J in rep.cover:
        assert is_compatible(rep.space, J)


def test_mode_names():
    assert normalize_mode("gcatp") == "gcat_p"
    assert normalize_mode("catu") == "cat_u"
    with pytest.raises(BadParameter):
        normalize_mode("lsc")


def test_colex_order():
    assert colex([0, 1, 2, 3], 2) == [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3)]


def test_antichain_only_singletons():
    t = enumerate_compatibility(fam.antichain(3), "gcat", 3)
    assert sorted(map(sorted, t.compatible_sets())) == [[0], [1], [2]]
    assert len(t.entries) == 7


def test_bipartite_prime_pairs_incompatible():
    t = enumerate_compatibility(fam.bipartite(2, 3), "gcat_p", 3)
    assert [len(J) for J in t.compatible_sets()] == [1, 1, 1]


def test_chain_everything_compatible():
    t = enumerate_compatibility(fam.chain(3), "gcat", 3)
    assert len(t.compatible_sets()) == 7
    assert all(line.endswith(":0") for line in t.lines())


def test_table_extension_keeps_entries():
    P = fam.cycle(6)
    t = enumerate_compatibility(P, "gcat", 2)
    before = dict(t.entries)
    enumerate_compatibility(P, "gcat", 3, table=t)
    assert all(t.entries[k] == v for k, v in before.items())
    assert t.complete_up_to == 3
    assert len(t.entries) == 6 + 15 + 20


def test_table_budget():
    with pytest.raises(BudgetExceeded):
        enumerate_compatibility(fam.antichain(12), "gcat", 12, budget=Budget(max_candidates=100))


def test_u_algorithm_examples():
    r = u_algorithm(fam.chain(5), "gcat", 5)
    assert (r.size, r.is_exact) == (1, True)
    r = u_algorithm(fam.antichain(4), "gcat", 4)
    assert (r.size, r.is_exact) == (4, True)
    r = u_algorithm(fam.cycle(6), "gcat", 3)
    assert r.size == 4 and not r.is_exact
    _covers_universe(r)


def test_u_algorithm_evaluation_count():
    P = fam.cycle(8)
    for k in range(2, 6):
        r = u_algorithm(P, "gcat", k)
        assert r.evaluated == sum(comb(8, j) for j in range(2, k + 1))


def test_u_algorithm_stop_length_checked():
    with pytest.raises(BadParameter):
        u_algorithm(fam.chain(3), "gcat", 1)


def test_d_algorithm_examples():
    assert d_algorithm(fam.chain(4)).size == 1
    r = d_algorithm(fam.cycle(4))
    assert (r.size, r.is_exact) == (2, True)
    assert max(len(J) for J in r.cover) == 3
    r = d_algorithm(fam.antichain(3))
    assert (r.size, r.is_exact) == (3, True)


def test_heuristic1_examples():
    assert heuristic1(fam.chain(5)).size == 1
    assert heuristic1(fam.antichain(4), ordering=[3, 1, 0, 2]).size == 4
    P = fam.cycle(4)
    order = [P.index(a) for a in ("x1", "y1", "x2", "y2")]
    r = heuristic1(P, ordering=order)
    # {x1,y1} compatible, {x1,y1,x2} spans the crown, then {x2,y2}
    assert [sorted(P.label(i) for i in J) for J in r.cover] == [["x1", "y1"], ["x2", "y2"]]
    assert r.ct_calls == 3


def test_heuristic1_call_count_is_linear():
    for name, P in small_corpus():
        for mode in ("gcat", "gcat_p"):
            r = heuristic1(P, mode)
            assert r.ct_calls == len(r.universe) - 1, name
            _covers_universe(r)


def test_heuristic1_skip_variant_never_worse_on_crown():
    P = fam.cycle(8)
    plain = heuristic1(P)
    skip = heuristic1(P, skip_one=True)
    _covers_universe(skip)
    assert skip.size <= plain.size + 1


def test_heuristic2_examples():
    r = heuristic2(fam.bipartite(2, 3), "gcat_p", 1)
    assert r.size == 3
    r = heuristic2(fam.chain(6), "gcat", 2)
    assert r.size == 3
    _covers_universe(r)
    again = heuristic2(fam.chain(6), "gcat", 2)
    assert again.cover == r.cover
    with pytest.raises(BadParameter):
        heuristic2(fam.chain(4), "gcat", 2)


def test_heuristic2_covering_variant_and_orders():
    P = fam.cycle(8)
    a = heuristic2(P, "gcat", 3, variant="covering")
    _covers_universe(a)
    first = sorted(a.compatible, key=lambda J: sorted(J))
    b = heuristic2(P, "gcat", 3, ordering=first, variant="disjoint")
    _covers_universe(b)
    with pytest.raises(BadParameter):
        heuristic2(P, "gcat", 3, ordering=[P.maximal])


def test_bounds_dominate_exact_value():
    for name, P in small_corpus():
        g = gcat_exact(P).value
        assert u_algorithm(P, "gcat").size >= g, name
        assert d_algorithm(P, "gcat").size >= g, name
        assert heuristic1(P, "gcat").size >= g, name


def test_core_mode_runs_on_core():
    c = Compatibility(fam.cone(fam.cycle(4)), "catu")
    assert c.space.n == 1 and c.universe == (0,)
    assert u_algorithm(fam.cone(fam.cycle(4)), "cat_u").size == 1


def test_height_one_mode():
    P = fam.cycle(8)
    x1, x3 = P.index("x1"), P.index("x3")
    c = Compatibility(P, "cat_h1")
    # two disjoint arcs: acyclic though disconnected
    assert c([x1, x3]) and not is_compatible(P, [x1, x3])
    r = heuristic1(P, "cat_h1")
    assert frozenset().union(*r.cover) == frozenset(P.maximal)
    assert all(c.quiet(J) for J in r.cover)
