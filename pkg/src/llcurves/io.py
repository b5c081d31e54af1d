"""File formats: JSON schemas for graphs, bundles, representations; DOT export.

Exact scalars are serialized as decimal fraction strings ("3/2", "-4"),
never floats; Gaussian rationals as ``[re, im]`` string pairs; 2x2 matrices
as row-major nested lists of those pairs.  All emitters sort keys, so
identical inputs produce byte-identical files.
"""

import json
import re
from fractions import Fraction

from .errors import IoFailure
from .exact import Mat2, QQi
from .graphs import build_graph
from .bundles import MatrixGluing, ScalarGluing
from .reps import Representation


# -- scalars -------------------------------------------------------------------


def fraction_to_json(f):
    return str(Fraction(f))


_FRACTION_RE = re.compile(r"-?\d+(/[1-9]\d*)?$")


def fraction_from_json(s):
    if not isinstance(s, str) or not _FRACTION_RE.match(s):
        raise IoFailure(f"bad rational literal {s!r} (use \"p\" or \"p/q\")")
    return Fraction(s)


def qqi_to_json(z):
    return [str(z.re), str(z.im)]


def qqi_from_json(pair):
    if not isinstance(pair, (list, tuple)) or len(pair) != 2:
        raise IoFailure(f"bad complex literal {pair!r}")
    return QQi(fraction_from_json(pair[0]), fraction_from_json(pair[1]))


def mat2_to_json(m):
    return [[qqi_to_json(m.a), qqi_to_json(m.b)],
            [qqi_to_json(m.c), qqi_to_json(m.d)]]


def mat2_from_json(rows):
    try:
        (a, b), (c, d) = rows
    except (TypeError, ValueError) as ex:
        raise IoFailure(f"bad 2x2 matrix {rows!r}") from ex
    return Mat2(qqi_from_json(a), qqi_from_json(b),
                qqi_from_json(c), qqi_from_json(d))


# -- graphs ---------------------------------------------------------------------


def graph_to_json(g):
    return {
        "vertices": list(range(g.num_vertices)),
        "edges": [{"id": k, "ends": sorted(g.edge_ends(k))}
                  for k in range(g.num_edges)],
    }


def graph_from_json(data):
    try:
        edges = sorted(data["edges"], key=lambda e: e["id"])
        ids = [e["id"] for e in edges]
        ends = [tuple(e["ends"]) for e in edges]
    except (KeyError, TypeError) as ex:
        raise IoFailure(f"malformed graph object: {ex}") from ex
    if ids != list(range(len(ids))):
        raise IoFailure("edge ids must be 0..E-1 without gaps")
    if any(len(e) != 2 for e in ends):
        raise IoFailure("every edge needs exactly two ends")
    return build_graph(ends)


def load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as ex:
        raise IoFailure(f"cannot read {path}: {ex}") from ex
    except json.JSONDecodeError as ex:
        raise IoFailure(f"corrupted JSON in {path}: {ex}") from ex


def dump_json(data, path=None):
    text = json.dumps(data, indent=2, sort_keys=True) + "\n"
    if path is None:
        return text
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as ex:
        raise IoFailure(f"cannot write {path}: {ex}") from ex
    return text


def load_graph(path):
    return graph_from_json(load_json(path))


# -- bundles ---------------------------------------------------------------------


def bundle_to_json(gluing):
    g = gluing.graph
    edges = {}
    for k, v in enumerate(gluing.values):
        entry = {"orientation": list(g.edge_ends(k))}
        if gluing.rank == 1:
            entry["value"] = qqi_to_json(v)
        else:
            entry["value"] = mat2_to_json(v)
        edges[str(k)] = entry
    return {"rank": gluing.rank, "edges": edges}


def bundle_from_json(data, graph):
    try:
        rank = data["rank"]
        raw = data["edges"]
    except (KeyError, TypeError) as ex:
        raise IoFailure(f"malformed bundle object: {ex}") from ex
    if rank not in (1, 2):
        raise IoFailure(f"rank must be 1 or 2, got {rank!r}")
    values = []
    for k in range(graph.num_edges):
        entry = raw.get(str(k))
        if entry is None:
            raise IoFailure(f"bundle is missing edge {k}")
        value = (qqi_from_json(entry["value"]) if rank == 1
                 else mat2_from_json(entry["value"]))
        orientation = tuple(entry.get("orientation",
                                      graph.edge_ends(k)))
        canonical = graph.edge_ends(k)
        if orientation == canonical:
            pass
        elif orientation == canonical[::-1] and not graph.is_loop(k):
            value = value.inverse()
        else:
            raise IoFailure(f"orientation {orientation} does not match edge {k}")
        values.append(value)
    cls = ScalarGluing if rank == 1 else MatrixGluing
    try:
        return cls(graph, tuple(values))
    except ValueError as ex:
        raise IoFailure(str(ex)) from ex


def load_bundle(path, graph):
    return bundle_from_json(load_json(path), graph)


# -- representations ---------------------------------------------------------------


def rep_to_json(rho):
    return {
        "genus": rho.genus,
        "meridians": [mat2_to_json(m) for m in rho.meridians],
        "longitudes": [mat2_to_json(l) for l in rho.longitudes],
    }


def rep_from_json(data):
    try:
        genus = data["genus"]
        meridians = tuple(mat2_from_json(m) for m in data["meridians"])
        longitudes = tuple(mat2_from_json(l) for l in data["longitudes"])
    except (KeyError, TypeError) as ex:
        raise IoFailure(f"malformed representation object: {ex}") from ex
    try:
        return Representation(genus, meridians, longitudes)
    except ValueError as ex:
        raise IoFailure(str(ex)) from ex


def load_rep(path):
    return rep_from_json(load_json(path))


# -- DOT export -----------------------------------------------------------------


def graph_to_dot(g, name="G", highlight_edge=None):
    lines = [f"graph {name} {{"]
    for v in range(g.num_vertices):
        lines.append(f"  {v};")
    for k in range(g.num_edges):
        u, v = g.edge_ends(k)
        attrs = [f'label="{k}"']
        if k == highlight_edge:
            attrs.append("style=bold")
        lines.append(f"  {u} -- {v} [{', '.join(attrs)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def nest_to_dot(nest):
    lines = ["graph nest {"]
    for i, flag in enumerate(nest.flags):
        g = flag.graph
        lines.append(f"  subgraph cluster_{i} {{")
        lines.append(f'    label="member {i}";')
        for v in range(g.num_vertices):
            lines.append(f"    n{i}_{v};")
        for k in range(g.num_edges):
            u, v = g.edge_ends(k)
            style = ", style=bold" if k == flag.edge else ""
            lines.append(f'    n{i}_{u} -- n{i}_{v} [label="{k}"{style}];')
        lines.append("  }")
    lines.append("}")
    return "\n".join(lines) + "\n"


def incidence_to_dot(genus):
    """Bipartite incidence of curve points versus deformation components.

    One node per graph class, one per nest; an edge for every edge of every
    class, joining the class to the nest its flag flips into.
    """
    from .graphs import Flag, enumerate_graphs, flip

    graphs = enumerate_graphs(genus)
    nest_ids = {}
    links = []
    for i, g in enumerate(graphs):
        orbit_nest = {}
        for orbit in g.edge_orbits():
            nest_key = flip(Flag(g, orbit[0])).canonical_key
            for e in orbit:
                orbit_nest[e] = nest_key
        for e in range(g.num_edges):
            key = orbit_nest[e]
            if key not in nest_ids:
                nest_ids[key] = len(nest_ids)
            links.append((i, nest_ids[key], e))
    lines = ["graph incidence {"]
    for i in range(len(graphs)):
        lines.append(f'  P{i} [shape=box, label="P{i}"];')
    for j in range(len(nest_ids)):
        lines.append(f'  C{j} [shape=ellipse, label="C{j}"];')
    for i, j, e in links:
        lines.append(f'  P{i} -- C{j} [label="{e}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
