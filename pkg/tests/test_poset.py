import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from finitecat import families as fam
from finitecat.budget import Budget
from finitecat.errors import (
    BadParameter,
    CycleDetected,
    DuplicateLabel,
    EmptyGenerator,
    EmptySubset,
    IndexOutOfRange,
    SizeBudgetExceeded,
    UnknownLabel,
)
from finitecat.isomorphism import find_isomorphism, is_isomorphic, is_order_isomorphism
from finitecat.poset import (
    connected_components,
    from_relations,
    induced_subposet,
    is_connected,
    min_open_set,
    open_hull,
    structure_queries,
    transitive_closure,
    transitive_reduction,
)

from .oracles import covers_brute, isomorphic_brute, order_matrix

seeds = st.integers(0, 2**32 - 1)


def test_closure_from_covers():
    P = from_relations("abc", [("a", "b"), ("b", "c")])
    assert P.less(P.index("a"), P.index("c"))
    assert P.cover_pairs() == [(0, 1), (1, 2)]
    assert P.height == 2


def test_relations_need_not_be_reduced():
    P = from_relations("abc", [("a", "b"), ("b", "c"), ("a", "c")], pairs_are_covers=False)
    assert len(P.cover_pairs()) == 2


def test_cycle_rejected():
    with pytest.raises(CycleDetected):
        from_relations("abc", [("a", "b"), ("b", "c"), ("c", "a")])
    with pytest.raises(CycleDetected):
        from_relations("a", [("a", "a")])


def test_bad_labels():
    with pytest.raises(DuplicateLabel):
        from_relations(["a", "a"], [])
    with pytest.raises(UnknownLabel):
        from_relations(["a"], [("a", "z")])


@settings(max_examples=60, deadline=None)
@given(seeds, st.integers(1, 12))
def test_reduction_matches_brute_force(seed, n):
    P = fam.random_poset(n, 0.4, random.Random(seed))
    M = order_matrix(P)
    R = transitive_reduction(M)
    assert {(int(i), int(j)) for i, j in zip(*np.nonzero(R))} == covers_brute(M)
    assert (transitive_closure(R) == M).all()
    assert set(P.cover_pairs()) == covers_brute(M)


def test_min_open_set_and_hull():
    P = fam.cycle(4)
    x1 = P.index("x1")
    assert set(min_open_set(P, x1).labels) == {"x1", "y1", "y2"}
    assert set(open_hull(P, P.maximal).labels) == set(P.labels)
    with pytest.raises(EmptyGenerator):
        open_hull(P, [])
    with pytest.raises(IndexOutOfRange):
        min_open_set(P, 99)


def test_structure_of_bipartite():
    P = fam.bipartite(2, 3)
    s = structure_queries(P)
    assert [P.label(i) for i in s.maximal] == ["x1", "x2", "x3"]
    assert [P.label(i) for i in s.minimal] == ["y1", "y2"]
    assert s.height == 1


def test_induced_subposet_and_components():
    P = fam.fence(5)
    Q = induced_subposet(P, [0, 1, 3, 4])
    assert Q.labels == ("f0", "f1", "f3", "f4")
    assert len(connected_components(Q)) == 2
    assert not is_connected(Q) and is_connected(P)
    with pytest.raises(EmptySubset):
        induced_subposet(P, [])


def test_family_shapes():
    assert fam.chain(4).height == 3
    assert fam.antichain(4).height == 0
    assert fam.cycle(6).n == 6 and len(fam.cycle(6).cover_pairs()) == 6
    assert fam.bipartite(2, 4).n == 6
    assert fam.cone(fam.cycle(4)).n == 5
    P = fam.c5crowns()
    assert all(P.lower_covers(i).bit_count() == 3 for i in P.maximal)
    with pytest.raises(BadParameter):
        fam.cycle(3)
    with pytest.raises(BadParameter):
        fam.make_family("torus", 3)


def test_enumeration_counts():
    # numbers of unlabeled posets on 1..6 points
    assert [len(fam.enumerate_posets(n)) for n in range(1, 7)] == [1, 2, 5, 16, 63, 318]


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(1, 9))
def test_isomorphism_agrees_with_networkx(seed, n):
    rng = random.Random(seed)
    P = fam.random_poset(n, 0.35, rng)
    perm = list(range(n))
    rng.shuffle(perm)
    relabelled = from_relations([f"z{perm[i]}" for i in range(n)],
                                [(f"z{perm[a]}", f"z{perm[b]}") for a, b in P.cover_pairs()])
    m = find_isomorphism(P, relabelled)
    assert m is not None and is_order_isomorphism(P, relabelled, m)
    Q = fam.random_poset(n, 0.35, rng)
    assert is_isomorphic(P, Q) == isomorphic_brute(P, Q)


def test_isomorphism_budget():
    with pytest.raises(SizeBudgetExceeded):
        is_isomorphic(fam.chain(20), fam.chain(20))
    assert is_isomorphic(fam.chain(20), fam.chain(20), limit=None)


def test_budget_parsing(monkeypatch):
    b = Budget.from_string("max_nodes=10, max_candidates=7")
    assert (b.max_nodes, b.max_candidates) == (10, 7)
    with pytest.raises(BadParameter):
        Budget.from_string("bogus=1")
    with pytest.raises(BadParameter):
        Budget(max_nodes=0)
    from finitecat.budget import default_budget
    monkeypatch.setenv("FINITECAT_BUDGET", "max_iso=5")
    assert default_budget().max_iso == 5
