"""The surface group of a pumped-up graph and its word algebra.

The genus-g surface group has the standard presentation with meridian
generators ``m1..mg``, longitude generators ``l1..lg``, and the single
relation ``[m1,l1]...[mg,lg]``.  Collapsing the surface onto the underlying
graph kills the meridians and sends longitudes to a free basis, giving the
projection ``project_r`` onto the free group of rank g.

Words are tuples of signed generator indices: ``+j``/``-j`` with ``1..g``
for meridians and ``g+1..2g`` for longitudes, always stored freely reduced.

Each edge of the graph carries a pants curve, a kernel element of the
projection.  With the joining paths running along the spanning tree, a
non-tree edge's curve is exactly its meridian, and a tree edge's curve is
the ordered product of the signed meridians of the handles crossing its
tree cut (tree arcs contribute no longitude letters, so the conjugators
collapse).  Separating pants curves therefore reduce to the empty word;
the model is faithful on homology, which is all downstream code relies on.
"""

from dataclasses import dataclass

from .errors import GenusTooSmall, MismatchedGraph
from .graphs import spanning_tree


def _reduce(letters):
    out = []
    for x in letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


@dataclass(frozen=True)
class SurfaceWord:
    """Freely reduced word in the genus-g surface group generators."""

    genus: int
    letters: tuple

    def __post_init__(self):
        for x in self.letters:
            if x == 0 or abs(x) > 2 * self.genus:
                raise ValueError(f"letter {x} out of range for genus {self.genus}")
        object.__setattr__(self, "letters", _reduce(self.letters))

    def __mul__(self, other):
        if self.genus != other.genus:
            raise MismatchedGraph("words over different genera")
        return SurfaceWord(self.genus, self.letters + other.letters)

    def inverse(self):
        return SurfaceWord(self.genus, tuple(-x for x in reversed(self.letters)))

    @property
    def is_identity(self):
        return not self.letters

    def __len__(self):
        return len(self.letters)

    def __repr__(self):
        return f"SurfaceWord({format_word(self)!r})"


def identity_word(genus):
    return SurfaceWord(genus, ())


def meridian(genus, j):
    """m_j, 1-based."""
    if not 1 <= j <= genus:
        raise ValueError(f"meridian index {j} out of range")
    return SurfaceWord(genus, (j,))


def longitude(genus, j):
    """l_j, 1-based."""
    if not 1 <= j <= genus:
        raise ValueError(f"longitude index {j} out of range")
    return SurfaceWord(genus, (genus + j,))


def format_word(word):
    """Render as e.g. ``"m1 l2^-1"``; the identity renders as ``"1"``."""
    if not word.letters:
        return "1"
    parts = []
    for x in word.letters:
        j = abs(x)
        name = f"m{j}" if j <= word.genus else f"l{j - word.genus}"
        parts.append(name if x > 0 else name + "^-1")
    return " ".join(parts)


def parse_word(text, genus):
    """Parse ``"m1 l2^-1 m1^2"`` syntax (whitespace-separated factors)."""
    letters = []
    for token in text.split():
        if token == "1":
            continue
        body, _, exp = token.partition("^")
        power = int(exp) if exp else 1
        kind, idx = body[0], body[1:]
        if kind not in "ml" or not idx.isdigit():
            raise ValueError(f"bad generator token {token!r}")
        j = int(idx)
        if not 1 <= j <= genus:
            raise ValueError(f"generator index out of range in {token!r}")
        base = j if kind == "m" else genus + j
        letters.extend([base if power > 0 else -base] * abs(power))
    return SurfaceWord(genus, tuple(letters))


@dataclass(frozen=True)
class Presentation:
    """Standard genus-g surface group presentation."""

    genus: int

    @property
    def meridians(self):
        return tuple(meridian(self.genus, j) for j in range(1, self.genus + 1))

    @property
    def longitudes(self):
        return tuple(longitude(self.genus, j) for j in range(1, self.genus + 1))

    def relation(self):
        """The product of commutators [m_j, l_j]; reduced length 4g."""
        g = self.genus
        letters = []
        for j in range(1, g + 1):
            letters.extend((j, g + j, -j, -(g + j)))
        return SurfaceWord(g, tuple(letters))


def presentation(genus):
    if genus < 2:
        raise GenusTooSmall(f"genus {genus} < 2")
    return Presentation(genus)


def project_r(word):
    """Project to the free group on x1..xg: kill meridians, l_j -> x_j.

    Returns a freely reduced tuple of signed indices in 1..g.
    """
    g = word.genus
    image = []
    for x in word.letters:
        j = abs(x)
        if j > g:
            image.append((j - g) if x > 0 else -(j - g))
    return _reduce(image)


def homology_class(word):
    """Exponent-sum vector over (m1..mg, l1..lg)."""
    vec = [0] * (2 * word.genus)
    for x in word.letters:
        vec[abs(x) - 1] += 1 if x > 0 else -1
    return tuple(vec)


@dataclass(frozen=True)
class CircleWords:
    """One pants-curve word per edge, derived from the spanning tree.

    Non-tree edge number j (ascending edge id) is the handle of meridian
    ``m_{j+1}``; its word is that single meridian.  Every word projects to
    the identity under :func:`project_r`, and its homology class equals the
    cut-space class of the edge.
    """

    graph: object
    genus: int
    tree_edges: tuple
    non_tree_edges: tuple
    base_vertex: int
    words: tuple  # indexed by edge id

    def word(self, edge):
        return self.words[edge]

    def meridian_tuple_edges(self):
        """Edges carrying the meridians, in meridian order."""
        return self.non_tree_edges


def circle_words(graph):
    """Pants-curve words for every edge of the graph.

    Tree-edge words multiply the signed meridians of the non-tree edges
    crossing the tree cut, oriented so that the cut relation
    ``[C_e] + sum(crossing meridians, with direction signs) = 0`` holds in
    homology; edges are oriented from their even half-edge.
    """
    g = graph.genus
    st = spanning_tree(graph)
    handle_index = {e: j + 1 for j, e in enumerate(st.non_tree_edges)}
    words = [None] * graph.num_edges
    for e in st.non_tree_edges:
        words[e] = meridian(g, handle_index[e])
    for e in st.tree_edges:
        far = st.subtree_vertices(e)
        src_far = graph.vertex_of(2 * e) in far
        letters = []
        for f in st.non_tree_edges:
            s, t = graph.vertex_of(2 * f), graph.vertex_of(2 * f + 1)
            if (s in far) == (t in far):
                continue
            same_direction = (t in far) == (not src_far)
            j = handle_index[f]
            letters.append(-j if same_direction else j)
        words[e] = SurfaceWord(g, tuple(letters))
    return CircleWords(graph, g, st.tree_edges, st.non_tree_edges, 0,
                       tuple(words))


def int_map(loop, cw):
    """Word of a combinatorial loop: the ordered product of its pants-curve
    words, inverted on reversed traversals, freely reduced."""
    if loop.graph != cw.graph:
        raise MismatchedGraph("loop and circle words over different graphs")
    word = identity_word(cw.genus)
    for edge, forward in loop.oriented_edges():
        w = cw.words[edge]
        word = word * (w if forward else w.inverse())
    return word
