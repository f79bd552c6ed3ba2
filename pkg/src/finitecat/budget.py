"""Resource caps for the exponential searches.

The defaults can be overridden process-wide through the ``FINITECAT_BUDGET``
environment variable, e.g. ``FINITECAT_BUDGET="max_candidates=4096,max_nodes=10000"``.
"""
from __future__ import annotations

import dataclasses
import os
from dataclasses import dataclass

from .errors import BadParameter

ENV_VAR = "FINITECAT_BUDGET"


@dataclass(frozen=True)
class Budget:
    # open sets / subsets materialized for an exact cover search
    max_candidates: int = 1 << 20
    # branch-and-bound nodes per exact solve
    max_nodes: int = 2_000_000
    # universe size for full subset enumeration (compatibility tables, sigma)
    max_universe: int = 16
    # largest poset handed to the isomorphism backtracker
    max_iso: int = 16
    # largest poset produced by subdivision
    max_size: int = 20_000

    def __post_init__(self):
        for f in dataclasses.fields(self):
            if getattr(self, f.name) <= 0:
                raise BadParameter(f"budget field {f.name} must be positive")

    def replace(self, **changes) -> "Budget":
        return dataclasses.replace(self, **changes)

    @classmethod
    def from_string(cls, text: str, base: "Budget | None" = None) -> "Budget":
        base = base or cls()
        names = {f.name for f in dataclasses.fields(cls)}
        changes = {}
        for item in filter(None, (s.strip() for s in text.split(","))):
            key, sep, value = item.partition("=")
            key = key.strip()
            if not sep or key not in names:
                raise BadParameter(f"bad budget item {item!r}")
            try:
                changes[key] = int(value)
            except ValueError:
                raise BadParameter(f"bad budget value {item!r}") from None
        return base.replace(**changes)


def default_budget() -> Budget:
    text = os.environ.get(ENV_VAR)
    if text:
        return Budget.from_string(text)
    return Budget()
