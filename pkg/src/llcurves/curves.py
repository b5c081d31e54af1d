"""Marked nodal curves over a trivalent graph and their residue systems.

One rational component per vertex, one node per edge, marked points indexed
by half-edges.  A section of the dualizing sheaf restricts to each component
as a differential with at most simple poles at the marked points, and is
faithfully encoded by its residue vector, so section spaces become exact
rational linear systems:

* canonical sections: residues cancel across each node and sum to zero on
  each component;
* bicanonical sections (trivalent components only): biresidues cancel
  across each node, with no component relation.

The merged degeneration replaces one non-loop node by a tube, fusing the two
incident components into a single 4-marked one.  Quadratic differentials on
a 4-marked component are not determined by biresidues alone, so biresidue
systems reject merged curves.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import HasBasePoints, NotTrivalent
from .exact import matrix_rank, nullspace
from .graphs import TrivalentGraph, flip


class MarkedCurve:
    """Nodal curve attached to a graph, optionally merged along one edge.

    Components are tuples of half-edges (the marked points); when an edge is
    merged, its node disappears and the fused component is listed first.
    """

    __slots__ = ("graph", "merged_edge", "_components", "_nodes")

    def __init__(self, graph, merged_edge=None):
        if merged_edge is not None:
            if not 0 <= merged_edge < graph.num_edges:
                raise ValueError(f"edge {merged_edge} not in graph")
            if graph.is_loop(merged_edge):
                raise ValueError(
                    "merging a loop node yields a genus-1 component, which the "
                    "residue model cannot represent")
        object.__setattr__(self, "graph", graph)
        object.__setattr__(self, "merged_edge", merged_edge)
        dead = () if merged_edge is None else (2 * merged_edge, 2 * merged_edge + 1)
        comps = []
        if merged_edge is None:
            for v in range(graph.num_vertices):
                comps.append(graph.star(v))
        else:
            u, v = graph.edge_ends(merged_edge)
            fused = tuple(sorted(h for h in graph.star(u) + graph.star(v)
                                 if h not in dead))
            comps.append(fused)
            for w in range(graph.num_vertices):
                if w not in (u, v):
                    comps.append(graph.star(w))
        object.__setattr__(self, "_components", tuple(comps))
        object.__setattr__(self, "_nodes", tuple(
            k for k in range(graph.num_edges) if k != merged_edge))

    @property
    def components(self):
        return self._components

    @property
    def nodes(self):
        return self._nodes

    @property
    def valences(self):
        return tuple(len(c) for c in self._components)

    @property
    def genus(self):
        """Arithmetic genus: nodes - components + 1 (all components rational)."""
        return len(self._nodes) - len(self._components) + 1

    def __eq__(self, other):
        if not isinstance(other, MarkedCurve):
            return NotImplemented
        return self.graph == other.graph and self.merged_edge == other.merged_edge

    def __hash__(self):
        return hash((self.graph, self.merged_edge))

    def __repr__(self):
        tag = "" if self.merged_edge is None else f", merged={self.merged_edge}"
        return f"MarkedCurve(g={self.genus}{tag})"


def ll_curve(graph):
    """The fully degenerate curve of a trivalent graph."""
    return MarkedCurve(graph)


def merged_curve(graph, edge):
    """The curve with the node of a non-loop edge smoothed into a tube."""
    return MarkedCurve(graph, edge)


@dataclass(frozen=True)
class ResidueSystem:
    """A homogeneous rational system in one variable per marked point.

    ``row_kinds`` records the constraint family of each row: ``("edge", k)``
    for node cancellation, ``("component", i)`` for a component-sum relation.
    The solution basis is exact and cached at construction.
    """

    variables: tuple
    rows: tuple
    row_kinds: tuple
    basis: tuple

    @property
    def dimension(self):
        return len(self.basis)

    @property
    def rank(self):
        return len(self.variables) - len(self.basis)

    def column(self, half_edge):
        return self.variables.index(half_edge)

    def functional_rank(self, half_edges):
        """Rank of the coordinate functionals of the given marked points,
        restricted to the solution space."""
        cols = [self.column(h) for h in half_edges]
        return matrix_rank([[vec[c] for c in cols] for vec in self.basis])

    def vanishes(self, half_edge):
        """Whether the coordinate functional is identically zero on the
        solution space."""
        c = self.column(half_edge)
        return all(not vec[c] for vec in self.basis)


def _solve(variables, rows, kinds):
    index = {h: i for i, h in enumerate(variables)}
    dense = []
    for row in rows:
        vec = [Fraction(0)] * len(variables)
        for h, coeff in row:
            vec[index[h]] += coeff
        dense.append(vec)
    basis = nullspace(dense, len(variables))
    return ResidueSystem(tuple(variables), tuple(tuple(r) for r in dense),
                         tuple(kinds), tuple(tuple(v) for v in basis))


def canonical_space(curve):
    """Residue system of the dualizing sheaf; dimension is the genus.

    Variables are residues at the marked points; residues cancel across each
    node and sum to zero on every component (the residue theorem on a
    rational component).
    """
    one = Fraction(1)
    variables = sorted(h for comp in curve.components for h in comp)
    rows, kinds = [], []
    for k in curve.nodes:
        rows.append([(2 * k, one), (2 * k + 1, one)])
        kinds.append(("edge", k))
    for i, comp in enumerate(curve.components):
        rows.append([(h, one) for h in comp])
        kinds.append(("component", i))
    return _solve(variables, rows, kinds)


def bicanonical_space(source):
    """Biresidue system of the square of the dualizing sheaf.

    Defined for trivalent data only: on a 3-marked rational component a
    quadratic differential with at most double poles is determined by its
    three biresidues.  Dimension is 3g - 3, with the per-edge biresidue
    functionals a basis of the dual space.
    """
    if isinstance(source, MarkedCurve):
        if any(v != 3 for v in source.valences):
            raise NotTrivalent("bicanonical systems need all components 3-marked")
        graph = source.graph
    elif isinstance(source, TrivalentGraph):
        graph = source
    else:
        raise TypeError("expected TrivalentGraph or MarkedCurve")
    one = Fraction(1)
    variables = list(range(2 * graph.num_edges))
    rows = [[(2 * k, one), (2 * k + 1, one)] for k in range(graph.num_edges)]
    kinds = [("edge", k) for k in range(graph.num_edges)]
    return _solve(variables, rows, kinds)


def biresidue_functionals(graph):
    """One dual functional per edge: the biresidue at the smaller half-edge.

    The orientation choice only affects signs, so ranks are unambiguous.
    """
    return tuple(2 * k for k in range(graph.num_edges))


def base_points(graph):
    """Edges at which every canonical section vanishes.

    An edge is a base point iff its residue coordinate is identically zero
    on the canonical solution space; this is empty exactly when the graph
    has no bridge (edge connectivity at least 2).
    """
    system = canonical_space(ll_curve(graph))
    return frozenset(k for k in range(graph.num_edges)
                     if system.vanishes(2 * k))


def separates_nodes(graph):
    """Whether canonical residue functionals of distinct edges are pairwise
    linearly independent on the solution space.

    A surrogate for very-ampleness of the canonical system; only defined
    when there are no base points.
    """
    bp = base_points(graph)
    if bp:
        raise HasBasePoints(f"base points at edges {sorted(bp)}")
    system = canonical_space(ll_curve(graph))
    for j in range(graph.num_edges):
        for k in range(j + 1, graph.num_edges):
            if system.functional_rank((2 * j, 2 * k)) != 2:
                return False
    return True


@dataclass(frozen=True)
class MultiDegree:
    """Degree of the dualizing sheaf per component: valence minus 2."""

    entries: tuple


def multidegree_K(curve):
    return MultiDegree(tuple(v - 2 for v in curve.valences))


@dataclass(frozen=True)
class DeformationFamily:
    """One-parameter smoothing attached to a flag.

    The three boundary members are the curves of the flag's nest; the
    generic member merges the flagged node into a 4-valent component.  For a
    loop flag the generic member would carry a genus-1 component, which the
    residue model cannot represent, so it is None.
    """

    flag: object
    boundary: tuple
    generic: object


def deformation_family(flag):
    nest = flip(flag)
    boundary = tuple(ll_curve(f.graph) for f in nest.flags)
    generic = None if flag.is_loop else merged_curve(flag.graph, flag.edge)
    return DeformationFamily(flag, boundary, generic)
