"""Finite T0-spaces as posets: cores, contractibility and LS-type categories."""
from .budget import Budget, default_budget
from .errors import *  # noqa: F401,F403
from .families import (
    antichain,
    arboricity_gap,
    bipartite,
    c5crowns,
    chain,
    cone,
    cycle,
    enumerate_posets,
    fence,
    graft_beat_points,
    make_family,
    random_height1,
    random_poset,
)
from .homotopy import core, find_beat_points, homotopy_equivalent, is_compatible, is_contractible
from .invariants import cat_u, gcat_exact, gcat_p_exact, invariant_chain_report
from .isomorphism import find_isomorphism, is_isomorphic
from .poset import FinitePoset, OpenSubset, from_relations, induced_subposet, min_open_set, open_hull

__version__ = "0.1.0"
