import random

import pytest
from hypothesis import given, settings, strategies as st

from finitecat import families as fam
from finitecat.bits import iter_bits
from finitecat.errors import (
    Disconnected,
    HeightMismatch,
    IncompatibleCover,
    NotDominating,
    PreconditionViolated,
)
from finitecat.height_one import (
    SimpleGraph,
    cat_height1,
    contains_crown_cycle,
    d_arboricity,
    gamma_multigraph,
    order_complex_graph,
    sanity_bounds_height1,
    strongify,
    vertex_arboricity,
    zigzag_path,
)
from finitecat.homotopy import contractible_mask, homotopy_equivalent
from finitecat.invariants import gcat_exact
from finitecat.poset import component_masks

from .oracles import cat_h1_brute, contractible_brute, order_matrix, vertex_arboricity_brute

seeds = st.integers(0, 2**32 - 1)


def _h1(seed, lo=2, hi=5):
    rng = random.Random(seed)
    return fam.random_height1(rng.randint(lo, hi), rng.randint(lo, hi), rng.uniform(0.3, 0.7), rng)


def test_crown_detection_examples():
    assert contains_crown_cycle(fam.cycle(4))
    assert not contains_crown_cycle(fam.fence(5))
    with pytest.raises(HeightMismatch):
        contains_crown_cycle(fam.chain(3))
    with pytest.raises(PreconditionViolated):
        contains_crown_cycle(fam.cycle(4), [0])


@settings(max_examples=200, deadline=None)
@given(seeds, st.integers(1, 2**10))
def test_crown_iff_some_component_not_contractible(seed, pick):
    P = _h1(seed)
    maxs = P.maximal
    J = [m for k, m in enumerate(maxs) if pick >> k & 1] or [maxs[0]]
    U = P.down_closure(sum(1 << j for j in J))
    M = order_matrix(P)
    comps_ok = all(contractible_brute(M, list(iter_bits(c))) for c in component_masks(P, U))
    assert contains_crown_cycle(P, U) == (not comps_ok)


def test_cat_values():
    for n in range(2, 7):
        assert cat_height1(fam.bipartite(2, n)).value == n
    for m in range(2, 6):
        assert cat_height1(fam.cycle(2 * m)).value == 2
    assert cat_height1(fam.c5crowns()).value == 3
    assert cat_height1(fam.chain(1)).value == 1


def _octahedron():
    # minimal finite model of the 2-sphere: its core has height 2
    from finitecat.poset import from_relations
    pairs = [(a, b) for a in ("a1", "a2") for b in ("b1", "b2")]
    pairs += [(b, c) for b in ("b1", "b2") for c in ("c1", "c2")]
    return from_relations(["a1", "a2", "b1", "b2", "c1", "c2"], pairs)


def test_cat_requires_connected_height_one_core():
    with pytest.raises(Disconnected):
        cat_height1(fam.antichain(2))
    with pytest.raises(HeightMismatch):
        cat_height1(_octahedron())
    # a taller space whose core is a crown is accepted
    P = fam.graft_beat_points(fam.cycle(6), 2, random.Random(3), kinds="down")
    assert cat_height1(P).value == 2


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_cat_matches_brute_force(seed):
    P = _h1(seed)
    assert cat_height1(P).value == cat_h1_brute(P)


def test_gamma_examples():
    G = gamma_multigraph(fam.bipartite(2, 4))
    assert len(G.edges) == 6 and len(G.double_edges()) == 6
    G = gamma_multigraph(fam.cycle(6))
    assert len(G.edges) == 3 and not G.double_edges()
    G = gamma_multigraph(fam.fence(3))
    assert len(G.edges) == 0


def _simple(n, pairs):
    return SimpleGraph.from_pairs(range(n), pairs)


def test_vertex_arboricity_examples():
    assert vertex_arboricity(_simple(4, [(0, 1), (1, 2), (1, 3)])).value == 1
    K4 = _simple(4, [(a, b) for a in range(4) for b in range(a + 1, 4)])
    assert vertex_arboricity(K4).value == 2
    for k in (2, 3, 4):
        assert vertex_arboricity(gamma_multigraph(fam.arboricity_gap(k))).value == k + 1


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(1, 7))
def test_vertex_arboricity_matches_brute_force(seed, n):
    rng = random.Random(seed)
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n) if rng.random() < 0.6]
    res = vertex_arboricity(_simple(n, pairs))
    assert res.exact and res.value == vertex_arboricity_brute(range(n), pairs)


def test_multigraph_double_edge_is_a_cycle():
    G = gamma_multigraph(fam.bipartite(2, 2))
    assert vertex_arboricity(G).value == 2


def test_d_arboricity_examples():
    star = _simple(4, [(0, 1), (0, 2), (0, 3)])
    assert d_arboricity(star, [0]).value == 1
    with pytest.raises(NotDominating):
        d_arboricity(_simple(3, [(0, 1)]), [0])
    for n in range(2, 6):
        P = fam.bipartite(2, n)
        D = [P.label(i) for i in P.maximal]
        assert d_arboricity(order_complex_graph(P), D).value == n
    P = fam.cycle(6)
    assert d_arboricity(order_complex_graph(P), [P.label(i) for i in P.maximal]).value == 2


def test_sanity_bounds():
    for n in range(2, 6):
        b = sanity_bounds_height1(fam.bipartite(2, n))
        assert (b.va_order_complex, b.cat, b.va_gamma) == (2, n, n)
    b = sanity_bounds_height1(fam.cycle(6))
    assert (b.va_order_complex, b.cat, b.va_gamma) == (2, 2, 2)
    for k in (2, 3, 4):
        b = sanity_bounds_height1(fam.arboricity_gap(k))
        assert (b.cat, b.va_gamma) == (2, k + 1)


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_sanity_bounds_hold_on_random_spaces(seed):
    assert sanity_bounds_height1(_h1(seed)).holds


def test_zigzag_examples():
    P = fam.cycle(8)
    y1 = P.index("y1")
    assert zigzag_path(P, y1, y1) == (y1,)
    path = zigzag_path(P, y1, P.index("y3"))
    assert len(path) == 5
    with pytest.raises(Disconnected):
        Q = fam.antichain(2)
        zigzag_path(Q, 0, 1)
    with pytest.raises(PreconditionViolated):
        zigzag_path(P, P.index("x1"), y1)


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_zigzag_alternates_and_is_simple(seed):
    P = _h1(seed)
    mins = P.minimal
    p, q = mins[0], mins[-1]
    path = zigzag_path(P, p, q)
    assert path[0] == p and path[-1] == q and len(set(path)) == len(path)
    for k in range(0, len(path) - 1, 2):
        assert path[k] in mins and P.less(path[k], path[k + 1]) and P.less(path[k + 2], path[k + 1])


def _check_strongify(P, cover):
    res = strongify(P, cover)
    Y = res.space
    assert Y.height <= 2
    assert homotopy_equivalent(P, Y)
    assert len(res.cover) == len(cover)
    union = 0
    for U in res.cover:
        assert Y.down_closure(U) == U and contractible_mask(Y, U)
        union |= U
    assert union == Y.full_mask
    return res


def test_strongify_keeps_connected_cover():
    P = fam.cycle(6)
    cover = [[P.index("x1"), P.index("x2")], [P.index("x3")]]
    res = _check_strongify(P, cover)
    assert res.space == P and res.added == ()


def test_strongify_joins_components():
    P = fam.cycle(8)
    ix = P.index
    res = _check_strongify(P, [[ix("x1"), ix("x3")], [ix("x2"), ix("x4")]])
    assert len(res.added) == 2
    assert gcat_exact(res.space).value == 2


def test_strongify_end_to_end_on_c5crowns():
    P = fam.c5crowns()
    c = cat_height1(P)
    cover = [[i for i in iter_bits(U) if i in P.maximal] for U in c.cover]
    res = _check_strongify(P, cover)
    assert gcat_exact(res.space).value == 3


def test_strongify_rejects_cyclic_member():
    P = fam.cycle(4)
    with pytest.raises(IncompatibleCover):
        strongify(P, [list(P.maximal)])
    with pytest.raises(PreconditionViolated):
        strongify(P, [[P.maximal[0]]])


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_strongify_on_split_covers(seed):
    # force disconnected members by pairing maximal points far apart
    P = _h1(seed, 3, 5)
    c = cat_height1(P)
    cover = [[i for i in iter_bits(U) if i in P.maximal] for U in c.cover]
    res = _check_strongify(P, cover)
    assert gcat_exact(res.space).value == c.value
