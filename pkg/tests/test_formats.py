import random

import pytest
from hypothesis import given, settings, strategies as st

from finitecat import families as fam
from finitecat.errors import CycleDetected, ParseError, UnknownLabel
from finitecat.formats import (
    complex_to_text,
    hypergraph_to_text,
    load_poset,
    parse_cover,
    parse_hypergraph,
    parse_label_lines,
    parse_poset,
    poset_to_dot,
    poset_to_structured,
    poset_to_text,
)
from finitecat.isomorphism import is_isomorphic
from finitecat.simplicial import order_complex


def same_order(P, Q) -> bool:
    if set(P.labels) != set(Q.labels):
        return False
    return all(P.less(P.index(a), P.index(b)) == Q.less(Q.index(a), Q.index(b))
               for a in P.labels for b in P.labels)


def test_text_parsing():
    P = parse_poset("# crown\ny1 < x1\ny2 < x1 > y1\ny1<x2\ny2 < x2\nlonely\n")
    assert P.n == 5 and len(P.maximal) == 3
    assert P.less(P.index("y1"), P.index("x1"))
    C = parse_poset("a < b < c")
    assert C.less(C.index("a"), C.index("c"))


@pytest.mark.parametrize("text", ["", "# only a comment", "a < ", "< b", "a < < b", "a b"])
def test_text_parse_errors(text):
    with pytest.raises(ParseError):
        parse_poset(text, "text")


def test_cycles_are_rejected():
    with pytest.raises(CycleDetected):
        parse_poset("a < b\nb < a")


def test_structured_parsing():
    P = parse_poset("elements: [a, b, c]\nrelations: [[a, b], [b, c]]\n")
    assert P.less(P.index("a"), P.index("c"))
    Q = parse_poset('{"elements": ["a", "b"], "relations": []}')
    assert Q.n == 2 and not Q.less(0, 1)
    for bad in ["elements: []", "relations: []", "elements: [a]\nrelations: [[a]]", "elements: [a\n"]:
        with pytest.raises(ParseError):
            parse_poset(bad, "structured")
    with pytest.raises(ParseError):
        parse_poset("a", "xml")


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_round_trips(seed):
    rng = random.Random(seed)
    P = fam.random_poset(rng.randint(1, 9), rng.uniform(0.2, 0.7), rng)
    assert same_order(P, parse_poset(poset_to_text(P)))
    assert same_order(P, parse_poset(poset_to_structured(P)))


def test_load_by_suffix(tmp_path):
    P = fam.bipartite(2, 3)
    path = tmp_path / "p.json"
    path.write_text(poset_to_structured(P))
    assert same_order(P, load_poset(path))
    path = tmp_path / "p.txt"
    path.write_text(poset_to_text(P))
    assert is_isomorphic(P, load_poset(path))


def test_dot_output():
    P = fam.chain(2)
    dot = poset_to_dot(P)
    assert dot.startswith("digraph hasse {") and "rankdir=BT;" in dot
    assert f'"{P.label(0)}" -> "{P.label(1)}";' in dot
    assert dot.count("rank=same") == 2


def test_line_formats():
    assert parse_label_lines("a, b\n# c\n\nc\n") == [["a", "b"], ["c"]]
    with pytest.raises(ParseError):
        parse_label_lines("a,,b")
    H = parse_hypergraph("1,2\n2,3\n")
    assert hypergraph_to_text(H) == "1,2\n2,3\n"
    with pytest.raises(ParseError):
        parse_hypergraph("# nothing")
    P = fam.cycle(4)
    cover = parse_cover(f"{P.label(0)}\n{P.label(1)},{P.label(2)}\n", P)
    assert cover == [[0], [1, 2]]
    with pytest.raises(UnknownLabel):
        parse_cover("nope\n", P)
    assert complex_to_text(order_complex(fam.chain(2))).splitlines()[-1].count(",") == 1

