import random

import pytest
from hypothesis import given, settings, strategies as st

from finitecat import families as fam
from finitecat.budget import Budget
from finitecat.errors import BudgetExceeded
from finitecat.homotopy import contractible_mask, core
from finitecat.invariants import (
    Estimate,
    cat_u,
    gcat_exact,
    gcat_p_exact,
    invariant_chain_report,
    iter_antichains,
    prime_refinement,
)

from .corpus import all_posets, small_corpus
from .oracles import gcat_brute, gcat_p_brute, open_sets_brute, order_matrix

seeds = st.integers(0, 2**32 - 1)


def _check_cover(res):
    P = res.space
    union = 0
    for U in res.cover:
        assert P.down_closure(U) == U
        assert contractible_mask(P, U)
        union |= U
    assert union == P.full_mask
    assert len(res.cover) == res.value


def test_antichains_give_every_open_set():
    for P in all_posets(5):
        opens = {P.down_closure(J) for J in iter_antichains(P)}
        brute = {sum(1 << i for i in U) for U in open_sets_brute(order_matrix(P))}
        assert opens == brute


@pytest.mark.parametrize("n", range(1, 6))
def test_gcat_matches_brute_force_on_all_small_posets(n):
    for P in all_posets(n):
        res = gcat_exact(P)
        _check_cover(res)
        assert res.value == gcat_brute(P)
        assert gcat_p_exact(P).value == gcat_p_brute(P)


@settings(max_examples=30, deadline=None)
@given(seeds, st.integers(6, 8))
def test_gcat_matches_brute_force_random(seed, n):
    P = fam.random_poset(n, 0.3, random.Random(seed))
    assert gcat_exact(P).value == gcat_brute(P)
    assert gcat_p_exact(P).value == gcat_p_brute(P)


def test_named_values():
    assert gcat_exact(fam.chain(6)).value == 1
    assert gcat_exact(fam.antichain(4)).value == 4
    assert gcat_exact(fam.cycle(6)).value == 2
    assert gcat_p_exact(fam.chain(3)).value == 1
    for n in range(2, 7):
        assert gcat_p_exact(fam.bipartite(2, n)).value == n
        assert cat_u(fam.bipartite(2, n)).value == n
    for m in range(2, 6):
        assert gcat_p_exact(fam.cycle(2 * m)).value == 2
    assert cat_u(fam.cone(fam.cycle(4))).value == 1
    assert cat_u(fam.cycle(4)).value == 2


def test_report_on_bipartite():
    r = invariant_chain_report(fam.bipartite(2, 3))
    assert (r.cat_h1.value, r.cat_u.value, r.gcat_p.value) == (3, 3, 3)
    assert (r.max_core, r.max_all) == (3, 3)
    js = r.as_json()
    assert js["gcat_p"] == {"value": 3, "kind": "exact"}


def test_report_on_chain_and_crown():
    r = invariant_chain_report(fam.chain(5))
    assert all(v.value == 1 for v in (r.gcat, r.gcat_p, r.cat_u, r.cat_h1))
    assert (r.max_core, r.max_all) == (1, 1)
    r = invariant_chain_report(fam.cycle(6))
    assert [v.value for v in (r.cat_h1, r.gcat, r.gcat_p, r.cat_u)] == [2, 2, 2, 2]
    assert r.max_core == 3


def test_report_chain_on_corpus():
    for name, P in small_corpus():
        r = invariant_chain_report(P)
        assert r.complete
        assert r.cat_u.value <= r.gcat_p.value <= r.max_core <= r.max_all, name
        assert r.gcat.value <= r.cat_u.value, name


def test_budget_fallback_is_an_interval():
    P = fam.c5crowns()
    with pytest.raises(BudgetExceeded) as info:
        gcat_exact(fam.antichain(3), Budget(max_candidates=2))
    assert "open sets" in str(info.value)
    r = invariant_chain_report(P, Budget(max_candidates=8))
    assert not r.complete
    assert r.gcat.lower <= 3 <= r.gcat.upper
    assert r.gcat.as_json()["kind"] == "bound"


def test_estimate_formatting():
    assert str(Estimate(2, 2)) == "2"
    assert str(Estimate(1, 3)) == "[1, 3]"
    with pytest.raises(ValueError):
        Estimate(1, 3).value


def test_prime_refinement_of_witnesses():
    for name, P in small_corpus():
        res = gcat_exact(P)
        V = prime_refinement(P, res.cover)
        assert len(V) <= len(res.cover)
        maxs = P.max_mask
        for v in V:
            assert P.down_closure(v & maxs) == v
            assert any(v & ~u == 0 for u in res.cover)


def test_cat_u_is_gcat_of_core():
    for name, P in small_corpus(8, 20):
        assert cat_u(P).value == gcat_exact(core(P).core).value
