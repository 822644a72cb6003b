"""Generators for the example surfaces and the bipartite connectivity harness."""

from __future__ import annotations

from .bipartite import bipartite_graph, is_connected, lemma_choices, random_choice
from .rp2 import create_surface as gen_rp2
from .x1 import create_surface as gen_x1
from .x2 import create_surface as gen_x2
from .x3 import create_surface as gen_x3

__all__ = [
    "bipartite_graph",
    "gen_rp2",
    "gen_x1",
    "gen_x2",
    "gen_x3",
    "is_connected",
    "lemma_choices",
    "random_choice",
]
