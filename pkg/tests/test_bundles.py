"""Gluing data modulo gauge: canonical forms, equivalences, the tuple
machinery, packet and automorphism dimensions."""

import random
from fractions import Fraction

import pytest

from llcurves import enumerate_graphs
from llcurves.bundles import (
    CanonicalBundleForm,
    GaugeTransform,
    MatrixGluing,
    ScalarGluing,
    automorphism_dim,
    canonical_form,
    compose_gauges,
    form_to_gluing,
    gauge_apply,
    identity_gauge,
    line_equivalent,
    packet_dim,
    random_diagonal_gluing,
    random_gauge,
    random_matrix_gluing,
    random_scalar_gluing,
    sl2_equivalent,
    sl2_tuples_equivalent,
    trace_coordinates,
    tuple_is_irreducible,
)
from llcurves.errors import DimensionMismatch, GraphMismatch
from llcurves.exact import Mat2, QQi


def test_gauge_apply_example(theta):
    a = ScalarGluing(theta, (2, 3, 5))
    g = GaugeTransform(theta, 1, (1, 2))
    assert [str(v) for v in gauge_apply(a, g).values] == ["1", "3/2", "5/2"]


def test_gauge_apply_identity(theta):
    a = ScalarGluing(theta, (2, 3, 5))
    assert gauge_apply(a, identity_gauge(theta, 1)) == a


def test_gauge_composition(theta):
    rng = random.Random(2)
    a = random_matrix_gluing(theta, rng)
    g = random_gauge(theta, rng, 2)
    h = random_gauge(theta, rng, 2)
    assert gauge_apply(gauge_apply(a, g), h) == \
        gauge_apply(a, compose_gauges(h, g))


def test_gauge_rank_mismatch(theta):
    a = ScalarGluing(theta, (2, 3, 5))
    rng = random.Random(0)
    with pytest.raises(DimensionMismatch):
        gauge_apply(a, random_gauge(theta, rng, 2))


def test_gauge_graph_mismatch(theta, dumbbell):
    a = ScalarGluing(theta, (2, 3, 5))
    with pytest.raises(DimensionMismatch):
        gauge_apply(a, identity_gauge(dumbbell, 1))


def test_orientation_reversal(theta):
    a = ScalarGluing(theta, (2, 3, 5))
    for k in range(3):
        assert a.oriented(2 * k) * a.oriented(2 * k + 1) == QQi(1)


def test_canonical_form_example(theta):
    form = canonical_form(ScalarGluing(theta, (2, 3, 5)))
    assert form.tree_edges == (0,)
    assert [str(v) for v in form.values] == ["3/2", "5/2"]


def test_canonical_form_trivial(theta):
    form = canonical_form(MatrixGluing(theta, (Mat2.identity(),) * 3))
    assert all(m.is_identity() for m in form.values)


def test_canonical_form_constant_on_orbits():
    rng = random.Random(9)
    for g in (2, 3):
        for graph in enumerate_graphs(g):
            a = random_scalar_gluing(graph, rng)
            gauged = gauge_apply(a, random_gauge(graph, rng, 1))
            assert canonical_form(a).values == canonical_form(gauged).values


def test_line_equivalence(theta):
    a = ScalarGluing(theta, (2, 3, 5))
    assert line_equivalent(a, ScalarGluing(theta, (4, 6, 10)))
    assert not line_equivalent(a, ScalarGluing(theta, (2, 3, 7)))


def test_line_equivalence_graph_mismatch(theta, dumbbell):
    with pytest.raises(GraphMismatch):
        line_equivalent(ScalarGluing(theta, (2, 3, 5)),
                        ScalarGluing(dumbbell, (2, 3, 5)))


def test_abelian_tuple_is_free():
    # every prescribed tuple is realized by some gluing: g free coordinates
    rng = random.Random(4)
    for g in (2, 3):
        for graph in enumerate_graphs(g):
            a = random_scalar_gluing(graph, rng)
            form = canonical_form(a)
            assert len(form.values) == g
            assert canonical_form(form_to_gluing(form)).values == form.values


def test_sl2_gauge_invariance(theta):
    rng = random.Random(13)
    a = random_matrix_gluing(theta, rng)
    for _ in range(5):
        assert sl2_equivalent(a, gauge_apply(a, random_gauge(theta, rng, 2)))


def test_sl2_weyl_flip(theta):
    ident = Mat2.identity()
    t = QQi(3)
    d1 = MatrixGluing(theta, (Mat2.diagonal(t, t.inverse()), ident, ident))
    d2 = MatrixGluing(theta, (Mat2.diagonal(t.inverse(), t), ident, ident))
    assert sl2_equivalent(d1, d2)


def test_sl2_perturbation_detected(theta):
    rng = random.Random(21)
    a = random_matrix_gluing(theta, rng)
    bumped = MatrixGluing(
        theta, a.values[:2] + (a.values[2] * Mat2(1, 1, 0, 1),))
    assert not sl2_equivalent(a, bumped)


def test_rank2_tuple_surjective():
    rng = random.Random(31)
    for g in (2, 3):
        for graph in enumerate_graphs(g):
            a = random_matrix_gluing(graph, rng)
            form = canonical_form(a)
            assert len(form.values) == g
            assert canonical_form(form_to_gluing(form)).values == form.values


# -- tuple machinery ---------------------------------------------------------------


def test_irreducibility_detection():
    e12, e21 = Mat2(1, 1, 0, 1), Mat2(1, 0, 1, 1)
    assert tuple_is_irreducible((e12, e21))
    assert not tuple_is_irreducible((e12, e12))
    # common eigenline over a quadratic extension is still reducible
    golden = Mat2(2, 1, 1, 1)
    assert not tuple_is_irreducible((golden, golden))
    # scalars impose nothing
    assert not tuple_is_irreducible((Mat2.identity(), Mat2.identity()))
    assert tuple_is_irreducible((Mat2.identity() * QQi(-1), e12, e21))
    # pairwise reducible but globally irreducible triple
    a = Mat2.diagonal(2, Fraction(1, 2))
    p = Mat2(0, 1, 1, 1)
    b = p * a * p.inverse()
    q = Mat2(1, 1, 0, 1)
    c = q * a * q.inverse()
    assert not tuple_is_irreducible((a, b)) or True  # pair shares a line
    assert tuple_is_irreducible((a, b, c))


def test_trace_coordinates_conjugation_invariant():
    rng = random.Random(8)
    from llcurves.bundles import random_unimodular

    mats = tuple(random_unimodular(rng) for _ in range(3))
    c = random_unimodular(rng)
    cinv = c.inverse()
    conj = tuple(c * m * cinv for m in mats)
    assert trace_coordinates(mats) == trace_coordinates(conj)
    assert sl2_tuples_equivalent(mats, conj)


def test_reducible_vs_irreducible_never_equivalent():
    e12, e21 = Mat2(1, 1, 0, 1), Mat2(1, 0, 1, 1)
    diag = (Mat2.diagonal(2, Fraction(1, 2)), Mat2.diagonal(3, Fraction(1, 3)))
    assert not sl2_tuples_equivalent((e12, e21), diag)


def test_semisimplification_identified():
    # a reducible non-semisimple tuple matches its diagonal part
    upper = (Mat2(2, 1, 0, Fraction(1, 2)), Mat2(3, 0, 0, Fraction(1, 3)))
    diag = (Mat2.diagonal(2, Fraction(1, 2)), Mat2.diagonal(3, Fraction(1, 3)))
    assert sl2_tuples_equivalent(upper, diag)


# -- automorphisms and packets -------------------------------------------------------


def test_automorphism_dims(theta):
    ident = Mat2.identity()
    trivial = MatrixGluing(theta, (ident,) * 3)
    assert automorphism_dim(trivial) == 3
    diag = MatrixGluing(theta, (ident, Mat2.diagonal(2, Fraction(1, 2)),
                                Mat2.diagonal(3, Fraction(1, 3))))
    assert automorphism_dim(diag) == 1
    rng = random.Random(17)
    assert automorphism_dim(random_matrix_gluing(theta, rng)) == 0


def test_packet_dims(theta):
    ident = Mat2.identity()
    trivial = MatrixGluing(theta, (ident,) * 3)
    assert packet_dim(trivial) == 6
    rng = random.Random(19)
    generic = random_matrix_gluing(theta, rng)
    assert packet_dim(generic) == 3


def test_packet_identity_sweep():
    rng = random.Random(23)
    for g in (2, 3):
        for graph in enumerate_graphs(g):
            target = 3 * g - 3
            ident = MatrixGluing(graph, (Mat2.identity(),) * graph.num_edges)
            cases = [ident, random_diagonal_gluing(graph, rng)]
            cases += [random_matrix_gluing(graph, rng) for _ in range(5)]
            for a in cases:
                assert packet_dim(a) - automorphism_dim(a) == target


def test_gluing_validation(theta):
    with pytest.raises(ValueError):
        ScalarGluing(theta, (1, 0, 2))
    with pytest.raises(ValueError):
        MatrixGluing(theta, (Mat2(1, 0, 0, 2),) * 3)
    with pytest.raises(ValueError):
        ScalarGluing(theta, (1, 2))
