"""Flat SL(2) representations of the surface group and the Schottky section.

Convention used throughout (fixed once, here): the meridians ``m1..mg``
generate the kernel side of the projection onto the graph's free group and
carry the bundle data; the Schottky locus is the set of representations
whose longitude images are exactly the identity.  Under the spanning-tree
convention of :mod:`llcurves.words`, the circle word of the j-th non-tree
edge is the single meridian ``m_j``, so restricting a representation to the
pants curves of the handles reads off its meridian tuple.

The forgetful map sends a representation to the canonical bundle form of
that tuple.  Pinning the longitudes to the identity makes the surface
relation automatic and inverts the map on the Schottky locus: existence and
uniqueness of the Schottky representative of a bundle reduce to tuple
bookkeeping, which is checked constructively.
"""

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .bundles import CanonicalBundleForm, MatrixGluing, sl2_tuples_equivalent
from .errors import (
    GluingObstruction,
    GraphMismatch,
    RelationViolated,
    UnknownGenerator,
)
from .exact import Mat2, QQI_ONE, QQi, matrix_rank, qqi
from .graphs import spanning_tree
from .words import circle_words


_TWO = QQi(2)
_MINUS_TWO = QQi(-2)


@dataclass(frozen=True)
class Representation:
    """Assignment of unimodular matrices to the standard generators.

    Determinants are validated; the surface relation is *not* (use
    :func:`verify_relation`), so deliberately broken inputs can be probed.
    """

    genus: int
    meridians: tuple
    longitudes: tuple

    def __post_init__(self):
        if self.genus < 2:
            raise ValueError("genus must be at least 2")
        if len(self.meridians) != self.genus or len(self.longitudes) != self.genus:
            raise ValueError("need one matrix per generator")
        for m in self.meridians + self.longitudes:
            if m.det() != QQI_ONE:
                raise ValueError("generator images must have determinant 1")

    def generator_image(self, letter):
        """Image of a signed generator index (meridians 1..g, then longitudes)."""
        j = abs(letter)
        if not 1 <= j <= 2 * self.genus:
            raise UnknownGenerator(f"generator index {j} out of range")
        m = self.meridians[j - 1] if j <= self.genus else self.longitudes[j - self.genus - 1]
        return m if letter > 0 else m.inverse()


def evaluate(rho, word):
    """Monodromy of a word: the ordered product of generator images."""
    if word.genus != rho.genus:
        raise UnknownGenerator("word over a different genus")
    out = Mat2.identity()
    for letter in word.letters:
        out = out * rho.generator_image(letter)
    return out


def verify_relation(rho):
    """Whether the product of commutators [m_j, l_j] is exactly the identity."""
    out = Mat2.identity()
    for m, l in zip(rho.meridians, rho.longitudes):
        out = out * m * l * m.inverse() * l.inverse()
    return out.is_identity()


def c_entry(rho, word, i, j):
    """Matrix entry (i, j), 1-based, of the word's monodromy."""
    return evaluate(rho, word).entry(i, j)


def on_schottky_locus(rho):
    """Whether every longitude image is exactly the identity."""
    return all(l.is_identity() for l in rho.longitudes)


@dataclass(frozen=True)
class ConjClass:
    """Conjugacy class of a unimodular matrix: trace plus type.

    Types: ``central+``/``central-`` for the scalars, ``semisimple`` for
    noncentral elements of trace != +-2, ``unipotent`` for noncentral
    elements of trace +-2.
    """

    trace: object
    kind: str


def conj_class(m):
    tr = m.trace()
    if m.is_scalar():
        return ConjClass(tr, "central+" if m.a == QQI_ONE else "central-")
    if tr == _TWO or tr == _MINUS_TWO:
        return ConjClass(tr, "unipotent")
    return ConjClass(tr, "semisimple")


def centralizer_dim(m):
    """Dimension of the traceless matrices commuting with m, solved exactly.

    3 for the central elements, 1 for everything else.
    """
    basis = (Mat2(1, 0, 0, -1), Mat2(0, 1, 0, 0), Mat2(0, 0, 1, 0))
    rows = []
    for pos in range(4):
        row = []
        for b in basis:
            comm = b * m - m * b
            row.append((comm.a, comm.b, comm.c, comm.d)[pos])
        rows.append(row)
    return 3 - matrix_rank(rows)


def can_glue(mi, mj):
    """Whether two boundary monodromies are conjugate: equal trace and type."""
    return conj_class(mi) == conj_class(mj)


# -- explicit conjugators -----------------------------------------------------


def _frame(m, v):
    """Basis matrix (v | m v); invertible iff v is cyclic for m."""
    mx, my = m.apply(*v)
    return Mat2(v[0], mx, v[1], my)


def _first_cyclic_frame(m):
    for v in ((QQI_ONE, QQi(0)), (QQi(0), QQI_ONE), (QQI_ONE, QQI_ONE)):
        f = _frame(m, v)
        if f.det():
            return f
    raise ValueError("no cyclic vector: matrix is scalar")


def _eigenvector(m, lam):
    n = m - Mat2.diagonal(lam, lam)
    if n.a or n.b:
        return (n.b, -n.a)
    return (n.d, -n.c)


def _small_gaussians():
    vals = [QQI_ONE, QQi(-1), QQi(0, 1), QQi(0, -1), QQi(2), QQi(-2),
            QQi(1, 1), QQi(1, -1), QQi(-1, 1), QQi(2, 1), QQi(1, 2),
            QQi(3), QQi(-3), QQi(2, 2), QQi(3, 1)]
    return [QQi(0)] + vals


def sl2_conjugator(m_from, m_to):
    """A determinant-1 matrix ``a`` over QQ(i) with ``a m_from a^-1 = m_to``.

    Requires conjugate inputs (equal trace and type).  Deterministic normal
    form: the identity for equal matrices, the antidiagonal Weyl element for
    swapped diagonals, otherwise a frame change onto a common normal form
    with the determinant repaired inside the centralizer of ``m_from``:

    * distinct eigenvalues in QQ(i): diagonalize both and scale one
      eigenline, which always lands in SL(2, QQ(i));
    * trace +-2: the centralizer has square determinants, so a unimodular
      conjugator exists iff the frame-quotient determinant is a square
      (conjugacy over the closure does not guarantee one over QQ(i):
      [[1,1],[0,1]] and [[1,2],[0,1]] differ by the non-square class of 2);
    * irrational eigenvalues: search the centralizer twists over small
      Gaussian integers for a square determinant.

    Raises :class:`GluingObstruction` (edge None) when no unimodular
    Gaussian-rational conjugator exists or none is found in the search
    range, even though the matrices are conjugate over the closure.
    """
    if not can_glue(m_from, m_to):
        raise ValueError("matrices are not conjugate")
    if m_from == m_to:
        return Mat2.identity()
    if (not m_from.b and not m_from.c and not m_to.b and not m_to.c
            and m_from.a == m_to.d and m_from.d == m_to.a):
        return Mat2(0, -1, 1, 0)

    t = m_from.trace()
    disc = t * t - QQi(4)
    s = disc.sqrt()
    if s is not None and s:
        # split semisimple: match eigenlines, then scale one of them
        lam = (t + s) * QQi(Fraction(1, 2))
        mu = (t - s) * QQi(Fraction(1, 2))
        vf1, vf2 = _eigenvector(m_from, lam), _eigenvector(m_from, mu)
        vt1, vt2 = _eigenvector(m_to, lam), _eigenvector(m_to, mu)
        cf = Mat2(vf1[0], vf2[0], vf1[1], vf2[1])
        ct = Mat2(vt1[0], vt2[0], vt1[1], vt2[1])
        a1 = ct * cf.inverse()
        r = a1.det()
        z = cf * Mat2.diagonal(r.inverse(), QQI_ONE) * cf.inverse()
        return a1 * z

    frame_from = _first_cyclic_frame(m_from)
    frame_to = _first_cyclic_frame(m_to)
    a0 = frame_to * frame_from.inverse()
    r = a0.det()
    root = r.sqrt()
    if root is not None:
        return a0 * root.inverse()
    if s is not None:
        # trace +-2: centralizer determinants are squares, so this is a
        # genuine field obstruction
        raise GluingObstruction(
            None, "conjugate over the closure, but no unimodular "
                  "Gaussian-rational conjugator exists (unipotent square class)")
    # irrational eigenvalues: twist by x + y*m_from inside the centralizer
    for x, y in product(_small_gaussians(), repeat=2):
        if not (x or y):
            continue
        z = Mat2.diagonal(x, x) + m_from * y
        dz = z.det()
        if not dz:
            continue
        root = (r * dz).sqrt()
        if root is not None:
            return a0 * z * root.inverse()
    raise GluingObstruction(
        None, "no unimodular Gaussian-rational conjugator found in the "
              "search range (the matrices are conjugate over the closure)")


@dataclass(frozen=True)
class PantsRep:
    """Boundary monodromies of every pants component, one matrix per
    half-edge, with the three matrices at each vertex multiplying to the
    identity in ascending half-edge order."""

    graph: object
    boundary: tuple  # indexed by half-edge

    def __post_init__(self):
        g = self.graph
        if len(self.boundary) != 2 * g.num_edges:
            raise ValueError("one matrix per half-edge required")
        for m in self.boundary:
            if m.det() != QQI_ONE:
                raise ValueError("boundary matrices must have determinant 1")
        for v in range(g.num_vertices):
            out = Mat2.identity()
            for h in g.star(v):
                out = out * self.boundary[h]
            if not out.is_identity():
                raise ValueError(f"boundary product at vertex {v} is not the identity")


def assemble_pants(graph, pants):
    """Glue pants data into a matrix gluing.

    For each edge the two boundary matrices must be conjugate; the gluing
    value on the canonical orientation conjugates the target-side matrix to
    the source-side one.  The stabilizer ambiguity is resolved by the
    deterministic normal form of :func:`sl2_conjugator`.
    """
    if pants.graph != graph:
        raise GraphMismatch("pants data over a different graph")
    values = []
    for k in range(graph.num_edges):
        ms, mt = pants.boundary[2 * k], pants.boundary[2 * k + 1]
        if not can_glue(ms, mt):
            raise GluingObstruction(k)
        values.append(sl2_conjugator(mt, ms))
    return MatrixGluing(graph, tuple(values))


# -- forgetful map and section ---------------------------------------------------


def forgetful(rho, cw):
    """Restrict a representation to the handles: the canonical bundle form
    of the tuple of non-tree circle-word monodromies (the meridian tuple)."""
    if cw.genus != rho.genus:
        raise GraphMismatch("circle words over a different genus")
    if not verify_relation(rho):
        raise RelationViolated("representation violates the surface relation")
    values = tuple(evaluate(rho, cw.words[e]) for e in cw.non_tree_edges)
    return CanonicalBundleForm(cw.graph, 2, cw.tree_edges, values,
                               "simultaneous_conjugation")


def circle_monodromies(rho, cw):
    """Monodromy of every pants curve (tree edges included).

    The tree-edge values are determined by the meridian tuple; they are
    reported so callers can check consistency of the full collection with
    its non-tree reduction.
    """
    if cw.genus != rho.genus:
        raise GraphMismatch("circle words over a different genus")
    return {e: evaluate(rho, cw.words[e]) for e in range(cw.graph.num_edges)}


def schottky_section(form):
    """The representation with the form's tuple on the meridians and the
    identity on every longitude; a section of :func:`forgetful`."""
    if form.rank != 2:
        raise ValueError("the section is defined for rank-2 forms")
    g = len(form.values)
    ident = Mat2.identity()
    return Representation(g, tuple(form.values), (ident,) * g)


_UNIQUENESS_CONJUGATORS = (
    Mat2(1, 1, 0, 1),
    Mat2(1, 0, 1, 1),
    Mat2(2, 1, 1, 1),
    Mat2(0, -1, 1, 0),
    Mat2(1, 2, 1, 3),
)


def schottky_unique(form):
    """Constructive uniqueness of the Schottky representative of a bundle.

    On the Schottky locus the longitudes are pinned, so a representation is
    its meridian tuple; two locus representations restricting to the same
    bundle have simultaneously conjugate tuples, and conjugating the tuple
    extends to a global conjugation of the representation.  The check
    verifies the section round trip and, for a fixed set of conjugators,
    that the conjugated locus representation is detected equivalent.
    """
    rho = schottky_section(form)
    cw = circle_words(form.graph)
    if not (verify_relation(rho) and on_schottky_locus(rho)):
        return False
    if not forgetful(rho, cw).equivalent_to(form):
        return False
    for c in _UNIQUENESS_CONJUGATORS:
        cinv = c.inverse()
        conj_tuple = tuple(c * m * cinv for m in form.values)
        other = Representation(rho.genus, conj_tuple, rho.longitudes)
        if not on_schottky_locus(other):
            return False
        if not forgetful(other, cw).equivalent_to(form):
            return False
        if not sl2_tuples_equivalent(conj_tuple, form.values):
            return False
    return True


def fricke_coordinates(a, b):
    """(tr a, tr b, tr ab): a complete conjugacy invariant for irreducible
    pairs of unimodular matrices."""
    return (a.trace(), b.trace(), (a * b).trace())


# -- seeded sample data -----------------------------------------------------------


def sample_representation(genus, mode, seed):
    """Deterministic valid representations for sweeps.

    ``schottky``: random integer unimodular meridians, identity longitudes.
    ``diagonal``: all generators diagonal (the relation is automatic).
    ``conjugated``: one of the above conjugated by a random unimodular
    matrix (alternating by seed parity).
    """
    if genus < 2:
        raise ValueError("genus must be at least 2")
    rng = random.Random(seed)
    ident = Mat2.identity()

    def shear_word():
        m = ident
        for _ in range(rng.randrange(2, 7)):
            x = rng.choice((-2, -1, 1, 2))
            m = m * (Mat2(1, x, 0, 1) if rng.randrange(2) else Mat2(1, 0, x, 1))
        return m

    def diag():
        while True:
            re = rng.randrange(-3, 4)
            im = rng.randrange(-1, 2)
            if re or im:
                t = QQi(re, im)
                return Mat2.diagonal(t, t.inverse())

    if mode == "schottky":
        return Representation(genus, tuple(shear_word() for _ in range(genus)),
                              (ident,) * genus)
    if mode == "diagonal":
        return Representation(genus, tuple(diag() for _ in range(genus)),
                              tuple(diag() for _ in range(genus)))
    if mode == "conjugated":
        base = sample_representation(genus, "schottky" if seed % 2 else "diagonal",
                                     seed + 1)
        c = shear_word()
        cinv = c.inverse()
        return Representation(genus,
                              tuple(c * m * cinv for m in base.meridians),
                              tuple(c * l * cinv for l in base.longitudes))
    raise ValueError(f"unknown sample mode {mode!r}")
