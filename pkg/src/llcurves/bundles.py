"""Bundles on the degenerate curve as edge gluing data modulo vertex gauge.

A (topologically trivial) bundle is described by one invertible scalar
(rank 1) or unimodular 2x2 matrix (rank 2) per oriented edge, inverted under
orientation reversal; changing the trivialization over a component acts by
``a -> g(source) * a * g(target)^-1``.  Values are stored on the canonical
orientation of each edge (even half-edge to odd half-edge).

Normalizing a spanning tree to the identity gauge leaves a free tuple on the
g non-tree edges: the moduli of line bundles is exactly (C*)^g, and the
rank-2 moduli is the space of g-tuples of unimodular matrices up to
simultaneous conjugation.  Tuple equivalence is decided by trace words of
length up to three (which generate the invariant ring) in the irreducible
case and by the simultaneous eigenvalue characters in the reducible case;
the character pair is pinned down by the trace words of length up to two.

All scalars are Gaussian rationals, so every comparison here is exact.
"""

from dataclasses import dataclass
from itertools import combinations

from .errors import DimensionMismatch, GraphMismatch
from .exact import Mat2, QQI_ONE, QQi, adjoint_matrix, matrix_rank, qqi
from .graphs import spanning_tree


# -- gluing data -------------------------------------------------------------


@dataclass(frozen=True)
class ScalarGluing:
    """Nonzero scalar per edge on the canonical orientation."""

    graph: object
    values: tuple

    def __post_init__(self):
        vals = tuple(qqi(v) for v in self.values)
        if len(vals) != self.graph.num_edges:
            raise ValueError("one scalar per edge required")
        if any(not v for v in vals):
            raise ValueError("gluing scalars must be nonzero")
        object.__setattr__(self, "values", vals)

    rank = 1

    def oriented(self, half_edge):
        """Value on the orientation running out of ``half_edge``."""
        v = self.values[half_edge // 2]
        return v if half_edge % 2 == 0 else v.inverse()


@dataclass(frozen=True)
class MatrixGluing:
    """Unimodular 2x2 matrix per edge on the canonical orientation."""

    graph: object
    values: tuple

    def __post_init__(self):
        if len(self.values) != self.graph.num_edges:
            raise ValueError("one matrix per edge required")
        for m in self.values:
            if m.det() != QQI_ONE:
                raise ValueError("gluing matrices must have determinant 1")

    rank = 2

    def oriented(self, half_edge):
        v = self.values[half_edge // 2]
        return v if half_edge % 2 == 0 else v.inverse()


@dataclass(frozen=True)
class GaugeTransform:
    """One invertible scalar (rank 1) or unimodular matrix (rank 2) per vertex."""

    graph: object
    rank: int
    values: tuple

    def __post_init__(self):
        if len(self.values) != self.graph.num_vertices:
            raise ValueError("one value per vertex required")
        if self.rank == 1:
            vals = tuple(qqi(v) for v in self.values)
            if any(not v for v in vals):
                raise ValueError("gauge scalars must be nonzero")
            object.__setattr__(self, "values", vals)
        elif self.rank == 2:
            for m in self.values:
                if m.det() != QQI_ONE:
                    raise ValueError("gauge matrices must have determinant 1")
        else:
            raise ValueError("rank must be 1 or 2")


def identity_gauge(graph, rank):
    if rank == 1:
        return GaugeTransform(graph, 1, (QQI_ONE,) * graph.num_vertices)
    return GaugeTransform(graph, 2, (Mat2.identity(),) * graph.num_vertices)


def compose_gauges(outer, inner):
    """Pointwise product; applying ``inner`` then ``outer`` equals applying
    the composition once."""
    if outer.graph != inner.graph or outer.rank != inner.rank:
        raise DimensionMismatch("gauges over different graphs or ranks")
    return GaugeTransform(outer.graph, outer.rank,
                          tuple(o * i for o, i in zip(outer.values, inner.values)))


def gauge_apply(gluing, gauge):
    """``a -> g(source) * a * g(target)^-1`` on the canonical orientation."""
    if gauge.graph != gluing.graph:
        raise DimensionMismatch("gauge over a different graph")
    if gauge.rank != gluing.rank:
        raise DimensionMismatch(
            f"rank-{gauge.rank} gauge applied to rank-{gluing.rank} gluing")
    g = gluing.graph
    out = []
    for k, a in enumerate(gluing.values):
        s, t = g.vertex_of(2 * k), g.vertex_of(2 * k + 1)
        if gluing.rank == 1:
            out.append(gauge.values[s] * a * gauge.values[t].inverse())
        else:
            out.append(gauge.values[s] * a * gauge.values[t].inverse())
    cls = ScalarGluing if gluing.rank == 1 else MatrixGluing
    return cls(g, tuple(out))


# -- canonical forms ---------------------------------------------------------


@dataclass(frozen=True)
class CanonicalBundleForm:
    """Spanning-tree-normalized gluing data.

    Tree edges are gauged to 1 (or the identity); what remains is the
    ordered tuple on the non-tree edges.  In rank 1 this is fully canonical;
    in rank 2 a simultaneous conjugation of the tuple survives, recorded in
    ``residual``.
    """

    graph: object
    rank: int
    tree_edges: tuple
    values: tuple
    residual: str

    def equivalent_to(self, other):
        """Equality as moduli points (modulo the residual symmetry)."""
        if self.graph != other.graph:
            raise GraphMismatch("canonical forms over different graphs")
        if self.rank != other.rank:
            return False
        if self.rank == 1:
            return self.values == other.values
        return sl2_tuples_equivalent(self.values, other.values)


def canonical_form(gluing):
    """Normalize tree edges by the unique-up-to-global-constant gauge.

    Walking the spanning tree from the root accumulates the holonomy from
    the root to each vertex; the resulting non-tree values are the cycle
    holonomies of the handles, in ascending non-tree edge order.
    """
    g = gluing.graph
    st = spanning_tree(g)
    one = QQI_ONE if gluing.rank == 1 else Mat2.identity()
    holo = [None] * g.num_vertices
    holo[0] = one
    for v in st.bfs_order[1:]:
        ph = st.parent_half[v]
        parent = g.vertex_of(g.partner(ph))
        # value oriented parent -> v
        holo[v] = holo[parent] * gluing.oriented(g.partner(ph))
    values = []
    for e in st.non_tree_edges:
        s, t = g.vertex_of(2 * e), g.vertex_of(2 * e + 1)
        if gluing.rank == 1:
            values.append(holo[s] * gluing.values[e] * holo[t].inverse())
        else:
            values.append(holo[s] * gluing.values[e] * holo[t].inverse())
    residual = "none" if gluing.rank == 1 else "simultaneous_conjugation"
    return CanonicalBundleForm(g, gluing.rank, st.tree_edges, tuple(values),
                               residual)


def form_to_gluing(form):
    """Place a canonical tuple back on its graph: identity on tree edges."""
    g = form.graph
    one = QQI_ONE if form.rank == 1 else Mat2.identity()
    values = [one] * g.num_edges
    for e, v in zip(spanning_tree(g).non_tree_edges, form.values):
        values[e] = v
    cls = ScalarGluing if form.rank == 1 else MatrixGluing
    return cls(g, tuple(values))


def line_equivalent(a, b):
    """Two scalar gluings define the same line bundle iff their canonical
    tuples (equivalently, all cycle holonomies) agree."""
    if a.graph != b.graph:
        raise GraphMismatch("gluings over different graphs")
    return canonical_form(a).values == canonical_form(b).values


def sl2_equivalent(a, b):
    """Two matrix gluings define the same rank-2 bundle iff their canonical
    tuples are simultaneously conjugate (irreducible case: equal trace
    coordinates; reducible case: equal simultaneous eigenvalue data)."""
    if a.graph != b.graph:
        raise GraphMismatch("gluings over different graphs")
    return sl2_tuples_equivalent(canonical_form(a).values,
                                 canonical_form(b).values)


# -- tuple equivalence machinery ----------------------------------------------


def _poly_normalize(poly):
    while poly and not poly[-1]:
        poly.pop()
    return poly


def _poly_mod(a, b):
    """Remainder of a by b over QQi (b nonzero, both coefficient lists)."""
    a = list(a)
    inv_lead = b[-1].inverse()
    while len(a) >= len(b):
        f = a[-1] * inv_lead
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[shift + i] = a[shift + i] - f * c
        _poly_normalize(a)
        if not a:
            break
    return a


def _poly_gcd(a, b):
    a, b = _poly_normalize(list(a)), _poly_normalize(list(b))
    while b:
        a, b = b, _poly_mod(a, b)
    if a:
        inv_lead = a[-1].inverse()
        a = [c * inv_lead for c in a]
    return a


def _invariant_line_poly(m):
    """Coefficients (low to high) of the binary form cutting the invariant
    lines of m: a line spanned by (t, 1) is invariant iff
    ``c t^2 + (d - a) t - b = 0``; the line at infinity iff ``c = 0``."""
    return [-m.b, m.d - m.a, m.c]


def tuple_is_irreducible(mats):
    """Whether the matrices share no common invariant line over the
    algebraic closure.

    Scalar matrices impose no condition.  The finite common lines are the
    common roots of the invariant-line quadratics, detected exactly by a
    polynomial gcd over QQ(i); the line at infinity is checked separately.
    """
    polys = []
    infinity_ok = True
    for m in mats:
        if m.is_scalar():
            continue
        polys.append(_invariant_line_poly(m))
        if m.c:
            infinity_ok = False
    if not polys:
        return False  # all scalar: every line is invariant
    if infinity_ok:
        return False
    g = polys[0]
    for p in polys[1:]:
        g = _poly_gcd(g, p)
        if len(g) <= 1:
            return True
    return len(g) <= 1


def _word_products(mats, max_len):
    """Products of ascending-index words of length <= max_len."""
    out = {}
    n = len(mats)
    for i in range(n):
        out[(i,)] = mats[i]
    if max_len >= 2:
        for i, j in combinations(range(n), 2):
            out[(i, j)] = mats[i] * mats[j]
    if max_len >= 3:
        for i, j, k in combinations(range(n), 3):
            out[(i, j, k)] = out[(i, j)] * mats[k]
    return out

def trace_coordinates(mats, max_len=3):
    """Traces of ascending words of length <= max_len, in a fixed order."""
    prods = _word_products(mats, max_len)
    return tuple(prods[w].trace() for w in sorted(prods))


def sl2_tuples_equivalent(t1, t2):
    """Simultaneous-conjugacy test for tuples of unimodular matrices.

    Irreducible tuples are compared through the full length-3 trace
    coordinates (these generate the invariant ring, and irreducible orbits
    are closed, so equality is exact conjugacy).  Reducible tuples are
    compared through their unordered pair of simultaneous eigenvalue
    characters, which is determined by the length-2 trace coordinates.
    Mixed pairs are never equivalent.
    """
    if len(t1) != len(t2):
        return False
    irr1, irr2 = tuple_is_irreducible(t1), tuple_is_irreducible(t2)
    if irr1 != irr2:
        return False
    depth = 3 if irr1 else 2
    return trace_coordinates(t1, depth) == trace_coordinates(t2, depth)


# -- infinitesimal automorphisms and the packet system -------------------------


def automorphism_dim(gluing):
    """Dimension of the traceless infinitesimal gauge stabilizer.

    Vertex-indexed traceless matrices ``X_v`` with
    ``X_source * a(e) = a(e) * X_target`` for every edge; solved exactly.
    """
    g = gluing.graph
    basis = (Mat2(1, 0, 0, -1), Mat2(0, 1, 0, 0), Mat2(0, 0, 1, 0))
    ncols = 3 * g.num_vertices
    zero = QQi(0)
    rows = []
    for k, a in enumerate(gluing.values):
        s, t = g.vertex_of(2 * k), g.vertex_of(2 * k + 1)
        for pos in range(4):
            row = [zero] * ncols
            for c, b in enumerate(basis):
                left = b * a      # X_s coefficient
                right = a * b     # X_t coefficient
                le = (left.a, left.b, left.c, left.d)[pos]
                ri = (right.a, right.b, right.c, right.d)[pos]
                row[3 * s + c] += le
                row[3 * t + c] -= ri
            rows.append(row)
    return ncols - matrix_rank(rows)


def packet_dim(gluing):
    """Dimension of the adjoint-twisted residue system of the gluing.

    One traceless residue per marked point, summing to zero at each vertex,
    with the two residues of an edge matched through the adjoint action of
    the gluing matrix: ``R_source + a^-1 R_target a = 0``.  Eliminating the
    source residues leaves one traceless unknown per edge and the vertex
    relations only.
    """
    g = gluing.graph
    ncols = 3 * g.num_edges
    zero = QQi(0)
    ad = []
    for a in gluing.values:
        ad.append(adjoint_matrix(a))
    rows = []
    for v in range(g.num_vertices):
        block = [[zero] * ncols for _ in range(3)]
        for h in g.star(v):
            k = h // 2
            if h % 2 == 1:
                for i in range(3):
                    block[i][3 * k + i] += QQI_ONE
            else:
                m = ad[k]
                for i in range(3):
                    for j in range(3):
                        block[i][3 * k + j] -= m[i][j]
        rows.extend(block)
    return ncols - matrix_rank(rows)


# -- seeded sampling ------------------------------------------------------------


def random_unimodular(rng, length=6):
    """Random integer unimodular matrix: a word in elementary shears."""
    m = Mat2.identity()
    for _ in range(rng.randrange(2, length + 1)):
        x = rng.choice((-2, -1, 1, 2))
        if rng.randrange(2):
            m = m * Mat2(1, x, 0, 1)
        else:
            m = m * Mat2(1, 0, x, 1)
    return m


def _random_nonzero_scalar(rng):
    while True:
        re = rng.randrange(-4, 5)
        im = rng.randrange(-2, 3)
        if re or im:
            return QQi(re, im)


def random_scalar_gluing(graph, rng):
    return ScalarGluing(graph, tuple(_random_nonzero_scalar(rng)
                                     for _ in range(graph.num_edges)))


def random_matrix_gluing(graph, rng):
    return MatrixGluing(graph, tuple(random_unimodular(rng)
                                     for _ in range(graph.num_edges)))


def random_diagonal_gluing(graph, rng):
    vals = []
    for _ in range(graph.num_edges):
        t = _random_nonzero_scalar(rng)
        vals.append(Mat2.diagonal(t, t.inverse()))
    return MatrixGluing(graph, tuple(vals))


def random_gauge(graph, rng, rank):
    if rank == 1:
        return GaugeTransform(graph, 1, tuple(_random_nonzero_scalar(rng)
                                              for _ in range(graph.num_vertices)))
    return GaugeTransform(graph, 2, tuple(random_unimodular(rng)
                                          for _ in range(graph.num_vertices)))
