"""Residue systems: section-space dimensions, base points, node separation,
the merged degeneration, with an independent sympy rank oracle."""

import pytest
import sympy

from llcurves import Flag, enumerate_graphs, thickness
from llcurves.curves import (
    base_points,
    bicanonical_space,
    canonical_space,
    deformation_family,
    ll_curve,
    merged_curve,
    multidegree_K,
    separates_nodes,
)
from llcurves.errors import HasBasePoints, NotTrivalent


def sympy_nullity(system):
    m = sympy.Matrix([[sympy.Rational(x) for x in row] for row in system.rows])
    return m.cols - m.rank()


def test_canonical_dimensions(theta, dumbbell, k4):
    assert canonical_space(ll_curve(theta)).dimension == 2
    assert canonical_space(ll_curve(dumbbell)).dimension == 2
    assert canonical_space(ll_curve(k4)).dimension == 3


def test_canonical_rank_has_one_dependency(theta):
    system = canonical_space(ll_curve(theta))
    assert len(system.rows) == 5
    assert system.rank == 4  # 5g - 6


def test_basis_satisfies_all_rows(theta):
    system = canonical_space(ll_curve(theta))
    for vec in system.basis:
        for row in system.rows:
            assert sum(c * x for c, x in zip(row, vec)) == 0


def test_row_kinds_are_declared(dumbbell):
    system = canonical_space(ll_curve(dumbbell))
    kinds = [k for k, _ in system.row_kinds]
    assert kinds.count("edge") == 3
    assert kinds.count("component") == 2


def test_merged_theta_dimension(theta):
    system = canonical_space(merged_curve(theta, 0))
    assert len(system.variables) == 4
    assert len(system.rows) == 3
    assert system.dimension == 2


def test_dimension_sweep_with_sympy_oracle():
    for g in (2, 3):
        for graph in enumerate_graphs(g):
            system = canonical_space(ll_curve(graph))
            assert system.dimension == g
            assert system.dimension == sympy_nullity(system)
            bi = bicanonical_space(graph)
            assert bi.dimension == 3 * g - 3
            assert bi.dimension == sympy_nullity(bi)


def test_merged_dimension_sweep():
    for g in (2, 3):
        for graph in enumerate_graphs(g):
            for e in range(graph.num_edges):
                if graph.is_loop(e):
                    continue
                assert canonical_space(merged_curve(graph, e)).dimension == g


def test_bicanonical_rejects_merged(theta):
    with pytest.raises(NotTrivalent):
        bicanonical_space(merged_curve(theta, 0))


def test_bicanonical_functional_basis(theta):
    system = bicanonical_space(theta)
    assert system.functional_rank([0, 2, 4]) == 3


def test_base_points(theta, dumbbell):
    assert base_points(theta) == frozenset()
    assert base_points(dumbbell) == frozenset({1})


def test_base_points_iff_thickness():
    for g in (2, 3, 4):
        for graph in enumerate_graphs(g):
            assert (len(base_points(graph)) == 0) == (thickness(graph) >= 2)


def test_separates_nodes(theta, dumbbell, k4):
    assert separates_nodes(theta) is True
    assert separates_nodes(k4) is True
    with pytest.raises(HasBasePoints):
        separates_nodes(dumbbell)


def test_separation_on_three_connected_classes():
    # node separation holds on every 3-connected class; the thickness-2
    # verdicts are recorded, not asserted
    seen_at_two = []
    for g in (3, 4):
        for graph in enumerate_graphs(g):
            th = thickness(graph)
            if th >= 3:
                assert separates_nodes(graph) is True
            elif th == 2:
                seen_at_two.append(separates_nodes(graph))
    assert seen_at_two  # at least one thickness-2 class was exercised


def test_multidegree(theta, k4):
    assert multidegree_K(ll_curve(theta)).entries == (1, 1)
    assert multidegree_K(merged_curve(theta, 0)).entries == (2,)
    assert multidegree_K(ll_curve(k4)).entries == (1, 1, 1, 1)


def test_merged_loop_is_rejected(dumbbell):
    with pytest.raises(ValueError):
        merged_curve(dumbbell, 0)


def test_deformation_family(theta, dumbbell, k4):
    fam = deformation_family(Flag(theta, 0))
    kinds = sorted(c.graph.is_isomorphic_to(theta) for c in fam.boundary)
    assert kinds == [False, True, True]
    assert canonical_space(fam.generic).dimension == 2

    loop_fam = deformation_family(Flag(dumbbell, 0))
    assert loop_fam.generic is None
    assert loop_fam.boundary[0] == loop_fam.boundary[1] == loop_fam.boundary[2]

    k4_fam = deformation_family(Flag(k4, 0))
    assert canonical_space(k4_fam.generic).dimension == 3
    assert multidegree_K(k4_fam.generic).entries[0] == 2


def test_genus_bookkeeping(theta):
    assert ll_curve(theta).genus == 2
    assert merged_curve(theta, 1).genus == 2
    assert ll_curve(theta).valences == (3, 3)
    assert merged_curve(theta, 1).valences == (4,)
