"""Influence maximization over live-arc scenarios.

Node ids are the graph's internal 0-based indices; ``Graph.labels`` maps
them back to the ids used in the input edge list.
"""

from ._infmax import (
    Graph,
    ParseError,
    Report,
    ScenarioSet,
    all_live,
    brute_force,
    dcg,
    enumerate_ic,
    expected_spread,
    greedy,
    k1_exact,
    sample_ic,
    sample_lt,
)

__all__ = [
    "Graph",
    "ParseError",
    "Report",
    "ScenarioSet",
    "all_live",
    "brute_force",
    "dcg",
    "enumerate_ic",
    "expected_spread",
    "greedy",
    "k1_exact",
    "sample_ic",
    "sample_lt",
]
