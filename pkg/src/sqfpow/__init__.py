"""Squarefree powers of edge ideals: Betti numbers, splittings, forest recursions."""

from __future__ import annotations

from .graphs import Graph, cycle, graph_from_edges, path, random_forest, star
from .monomials import MonomialIdeal, edge_ideal, squarefree_power
from .resolution import GF2, GF3, QQ, BettiTable, FieldSpec, betti_table, g_value, invariants

__all__ = [
    "Graph",
    "cycle",
    "graph_from_edges",
    "path",
    "random_forest",
    "star",
    "MonomialIdeal",
    "edge_ideal",
    "squarefree_power",
    "GF2",
    "GF3",
    "QQ",
    "BettiTable",
    "FieldSpec",
    "betti_table",
    "g_value",
    "invariants",
]

__version__ = "0.1.0"
