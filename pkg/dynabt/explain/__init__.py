"""
Eliminating Explanations

Elimination sets and the mechanisms that fill them.
"""

from .elimination import (
    EliminationSet,
    Explanation,
    culprit_union,
    eliminated_values,
    merge,
    prune_involving,
    total_entries,
)
from .mechanisms import (
    MECHANISMS,
    Mechanism,
    blame_everything,
    eliminate_basic,
    eliminate_forward,
    get_mechanism,
)

__all__ = [
    "EliminationSet",
    "Explanation",
    "MECHANISMS",
    "Mechanism",
    "blame_everything",
    "culprit_union",
    "eliminate_basic",
    "eliminate_forward",
    "eliminated_values",
    "get_mechanism",
    "merge",
    "prune_involving",
    "total_entries",
]
