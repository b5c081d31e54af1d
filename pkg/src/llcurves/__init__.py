"""Combinatorial models of maximally degenerate stable curves.

The package models a genus-g curve entirely degenerated along a pants
decomposition: a trivalent graph with one rational component per vertex and
one node per edge.  On that model it computes, with exact arithmetic only,

* canonical and bicanonical section spaces as residue linear systems,
* line- and rank-2-bundle moduli as edge gluing data modulo vertex gauge,
* flat SL(2) representations of the surface group, the forgetful map to
  bundle data, and its explicit section through Schottky-type
  representations.
"""

__version__ = "0.1.0"

from .errors import LLCurveError
from .graphs import (
    CombinatorialLoop,
    Flag,
    Nest,
    TrivalentGraph,
    build_graph,
    counting_report,
    dumbbell_graph,
    enumerate_graphs,
    flip,
    insert_edge,
    irreducible_loops,
    k4_graph,
    reduce_genus,
    theta_graph,
    thickness,
)

__all__ = [
    "LLCurveError",
    "CombinatorialLoop",
    "Flag",
    "Nest",
    "TrivalentGraph",
    "build_graph",
    "counting_report",
    "dumbbell_graph",
    "enumerate_graphs",
    "flip",
    "insert_edge",
    "irreducible_loops",
    "k4_graph",
    "reduce_genus",
    "theta_graph",
    "thickness",
]
