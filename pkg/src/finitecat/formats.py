"""Reading and writing posets, hypergraphs, covers and complexes.

Poset text format, one statement per line::

    # a crown on four points
    y1 < x1
    y2 < x1 > y1      # chains of < and > are allowed
    lonely            # a bare label declares an isolated point

Structured format (YAML or JSON)::

    elements: [a, b, c]
    relations: [[a, b], [b, c]]
    relations_are_covers: true
"""
from __future__ import annotations

import json
import re
from pathlib import Path
from typing import Iterable

import yaml

from .errors import ParseError
from .hypergraph import Hypergraph
from .poset import FinitePoset, from_relations
from .simplicial import SimplicialComplex

_TOKEN = re.compile(r"\s*(<|>|[^\s<>]+)")


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


# -- posets ---------------------------------------------------------------------
def parse_poset_text(text: str) -> FinitePoset:
    labels: dict[str, None] = {}
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line:
            continue
        tokens = _TOKEN.findall(line)
        if "".join(tokens) != re.sub(r"\s+", "", line):
            raise ParseError(f"line {lineno}: cannot tokenize {raw.strip()!r}")
        names = tokens[0::2]
        ops = tokens[1::2]
        if len(tokens) % 2 == 0 or any(t in "<>" for t in names) or any(o not in "<>" for o in ops):
            raise ParseError(f"line {lineno}: expected 'a < b' or a bare label, got {raw.strip()!r}")
        for a in names:
            labels.setdefault(a)
        for a, op, b in zip(names, ops, names[1:]):
            pairs.append((a, b) if op == "<" else (b, a))
    if not labels:
        raise ParseError("no elements declared")
    return from_relations(list(labels), pairs)


def parse_poset_structured(text: str) -> FinitePoset:
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ParseError(f"not valid YAML/JSON: {exc}") from None
    if not isinstance(doc, dict) or "elements" not in doc:
        raise ParseError("structured input needs an 'elements' list")
    elements = doc["elements"]
    relations = doc.get("relations") or []
    if not isinstance(elements, list) or not elements:
        raise ParseError("'elements' must be a nonempty list")
    if not isinstance(relations, list):
        raise ParseError("'relations' must be a list of pairs")
    pairs = []
    for r in relations:
        if not isinstance(r, (list, tuple)) or len(r) != 2:
            raise ParseError(f"relation {r!r} is not a pair")
        pairs.append((str(r[0]), str(r[1])))
    covers = bool(doc.get("relations_are_covers", False))
    return from_relations([str(e) for e in elements], pairs, pairs_are_covers=covers)


def parse_poset(text: str, fmt: str | None = None) -> FinitePoset:
    """``fmt`` is ``text``, ``structured`` or ``None`` to sniff the content."""
    if fmt is None:
        head = _strip(next((ln for ln in text.splitlines() if _strip(ln)), ""))
        fmt = "structured" if head.startswith(("{", "elements")) else "text"
    if fmt == "structured":
        return parse_poset_structured(text)
    if fmt == "text":
        return parse_poset_text(text)
    raise ParseError(f"unknown format {fmt!r}")


def load_poset(path: str | Path, fmt: str | None = None) -> FinitePoset:
    path = Path(path)
    if fmt is None and path.suffix.lower() in (".yaml", ".yml", ".json"):
        fmt = "structured"
    return parse_poset(path.read_text(), fmt)


def poset_to_text(P: FinitePoset) -> str:
    """Cover relations, then isolated points."""
    lines = [f"{P.label(a)} < {P.label(b)}" for a, b in sorted(P.cover_pairs(), key=lambda e: (e[1], e[0]))]
    lines += [P.label(i) for i in range(P.n) if not P.below(i) and not P.above(i)]
    return "\n".join(lines) + "\n"


def poset_to_structured(P: FinitePoset) -> str:
    doc = {
        "elements": list(P.labels),
        "relations": [[P.label(a), P.label(b)] for a, b in P.cover_pairs()],
        "relations_are_covers": True,
    }
    return json.dumps(doc, indent=2) + "\n"


def _dot_id(name: str) -> str:
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def poset_to_dot(P: FinitePoset, name: str = "hasse") -> str:
    """Hasse diagram with edges from lower to upper point and one rank per level."""
    out = [f"digraph {name} {{", "  rankdir=BT;"]
    by_level: dict[int, list[int]] = {}
    for i in range(P.n):
        by_level.setdefault(P.levels[i], []).append(i)
    for level in sorted(by_level):
        ids = "; ".join(_dot_id(P.label(i)) for i in by_level[level])
        out.append(f"  {{ rank=same; {ids}; }}")
    for a, b in sorted(P.cover_pairs(), key=lambda e: (e[1], e[0])):
        out.append(f"  {_dot_id(P.label(a))} -> {_dot_id(P.label(b))};")
    out.append("}")
    return "\n".join(out) + "\n"


# -- comma-separated line formats ------------------------------------------------------
def parse_label_lines(text: str) -> list[list[str]]:
    """One nonempty comma-separated group per line (covers, hyperedges)."""
    groups = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line:
            continue
        items = [t.strip() for t in line.split(",")]
        if any(not t for t in items):
            raise ParseError(f"line {lineno}: empty label in {raw.strip()!r}")
        groups.append(items)
    return groups


def parse_hypergraph(text: str) -> Hypergraph:
    edges = parse_label_lines(text)
    if not edges:
        raise ParseError("no hyperedges")
    return Hypergraph.from_edges(edges)


def hypergraph_to_text(H: Hypergraph) -> str:
    pos = {v: i for i, v in enumerate(H.vertices)}
    return "".join(",".join(str(v) for v in sorted(e, key=pos.get)) + "\n" for e in H.edges)


def parse_cover(text: str, P: FinitePoset) -> list[list[int]]:
    """Cover file: one member per line, given by comma-separated labels."""
    groups = parse_label_lines(text)
    if not groups:
        raise ParseError("empty cover")
    return [P.indices(g) for g in groups]


def complex_to_text(K: SimplicialComplex) -> str:
    return "".join(line + "\n" for line in K.lines())


def groups_to_text(groups: Iterable[Iterable[str]]) -> str:
    return "".join(",".join(g) + "\n" for g in groups)
