"""Single command-line entry point with one subcommand per capability.

Exit codes: 0 success, 2 validation error, 3 property failure, 4 I/O
failure.  All structured output is deterministic JSON (sorted keys, exact
scalars as fraction strings); set the LLCURVE_LOG environment variable to a
logging level name for progress output on stderr.
"""

import argparse
import logging
import os
import sys

from . import __version__, io
from .bundles import automorphism_dim, canonical_form, line_equivalent, \
    packet_dim, sl2_equivalent
from .curves import base_points, bicanonical_space, canonical_space, \
    ll_curve, merged_curve, multidegree_K
from .errors import IoFailure, LLCurveError, SuiteFailure
from .graphs import Flag, counting_report, enumerate_graphs, flip, \
    reduce_genus, thickness
from .reps import evaluate, forgetful, on_schottky_locus, schottky_section, \
    schottky_unique, verify_relation
from .verify import cmd_verify_suite
from .words import circle_words, parse_word

log = logging.getLogger("llcurves")


def _emit(data, out=None):
    text = io.dump_json(data, out)
    if out is None:
        sys.stdout.write(text)


def _emit_text(text, out=None):
    if out is None:
        sys.stdout.write(text)
    else:
        try:
            with open(out, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as ex:
            raise IoFailure(f"cannot write {out}: {ex}") from ex


def cmd_graphs(args):
    graphs = enumerate_graphs(args.genus)
    if args.out is None:
        if args.format == "dot":
            for g in graphs:
                sys.stdout.write(io.graph_to_dot(g))
        else:
            _emit([io.graph_to_json(g) for g in graphs])
        return 0
    os.makedirs(args.out, exist_ok=True)
    index = []
    for i, g in enumerate(graphs):
        if args.format == "dot":
            name = f"graph_{i:03d}.dot"
            _emit_text(io.graph_to_dot(g), os.path.join(args.out, name))
        else:
            name = f"graph_{i:03d}.json"
            io.dump_json(io.graph_to_json(g), os.path.join(args.out, name))
        index.append({"file": name, "genus": args.genus, "index": i,
                      "loops": len(g.loops()), "thickness": thickness(g)})
    io.dump_json({"genus": args.genus, "count": len(graphs), "graphs": index},
                 os.path.join(args.out, "index.json"))
    log.info("wrote %d graphs to %s", len(graphs), args.out)
    return 0


def _curve_report(graph, merged):
    curve = ll_curve(graph) if merged is None else merged_curve(graph, merged)
    report = {
        "genus": curve.genus,
        "thickness": thickness(graph),
        "dim_K": canonical_space(curve).dimension,
        "multidegree": list(multidegree_K(curve).entries),
        "base_points": sorted(base_points(graph)),
    }
    # biresidue coordinates do not determine quadratic differentials on a
    # 4-marked component, so the merged dimension is not computed
    report["dim_2K"] = (bicanonical_space(graph).dimension
                        if merged is None else None)
    return report


def cmd_curve_info(args):
    graph = io.load_graph(args.graph)
    _emit(_curve_report(graph, args.merged), args.out)
    return 0


def cmd_flip(args):
    graph = io.load_graph(args.graph)
    nest = flip(Flag(graph, args.edge))
    if args.format == "dot":
        _emit_text(io.nest_to_dot(nest), args.out)
        return 0
    members = []
    for f in nest.flags:
        obj = io.graph_to_json(f.graph)
        obj["flag_edge"] = f.edge
        members.append(obj)
    _emit({"edge": args.edge, "members": members}, args.out)
    return 0


def cmd_reduce(args):
    graph = io.load_graph(args.graph)
    reduced, pair = reduce_genus(Flag(graph, args.edge))
    _emit({"graph": io.graph_to_json(reduced), "pair": list(pair)}, args.out)
    return 0


def cmd_counts(args):
    _emit(counting_report(args.genus).as_dict(), args.out)
    return 0


def cmd_bundle(args):
    graph = io.load_graph(args.graph)
    bundle = io.load_bundle(args.bundle, graph)
    if args.action == "canon":
        form = canonical_form(bundle)
        values = [io.qqi_to_json(v) if bundle.rank == 1 else io.mat2_to_json(v)
                  for v in form.values]
        _emit({"rank": form.rank, "tree_edges": list(form.tree_edges),
               "tuple": values, "residual": form.residual}, args.out)
        return 0
    if args.action == "equiv":
        if args.bundle2 is None:
            raise LLCurveError("equiv needs --bundle2")
        other = io.load_bundle(args.bundle2, graph)
        if other.rank != bundle.rank:
            _emit({"equivalent": False}, args.out)
            return 0
        same = (line_equivalent(bundle, other) if bundle.rank == 1
                else sl2_equivalent(bundle, other))
        _emit({"equivalent": same}, args.out)
        return 0
    if bundle.rank != 2:
        raise LLCurveError("packet dimensions need a rank-2 bundle")
    _emit({"packet_dim": packet_dim(bundle),
           "automorphism_dim": automorphism_dim(bundle),
           "difference": packet_dim(bundle) - automorphism_dim(bundle)},
          args.out)
    return 0


def cmd_rep(args):
    rho = io.load_rep(args.rep)
    if args.action == "verify":
        _emit({"relation_holds": verify_relation(rho),
               "on_schottky_locus": on_schottky_locus(rho)}, args.out)
        return 0
    if args.word is None:
        raise LLCurveError("eval needs --word")
    word = parse_word(args.word, rho.genus)
    _emit({"word": args.word, "matrix": io.mat2_to_json(evaluate(rho, word))},
          args.out)
    return 0


def cmd_schottky(args):
    graph = io.load_graph(args.graph)
    bundle = io.load_bundle(args.bundle, graph)
    if bundle.rank != 2:
        raise LLCurveError("the Schottky section needs a rank-2 bundle")
    form = canonical_form(bundle)
    rho = schottky_section(form)
    if args.action == "section":
        _emit(io.rep_to_json(rho), args.out)
        return 0
    cw = circle_words(graph)
    relation = verify_relation(rho)
    locus = on_schottky_locus(rho)
    if args.action == "verify":
        _emit({"relation_holds": relation, "on_schottky_locus": locus},
              args.out)
        return 0 if (relation and locus) else 3
    round_trip = forgetful(rho, cw).equivalent_to(form)
    unique = schottky_unique(form)
    _emit({"relation_holds": relation, "on_schottky_locus": locus,
           "round_trip": round_trip, "unique": unique}, args.out)
    return 0 if (relation and locus and round_trip and unique) else 3


def cmd_verify(args):
    def progress(task, result, seconds):
        stamp = "" if seconds is None else f" ({seconds:.2f}s)"
        log.info("%s g=%d #%d: %s%s", result.name, result.genus, result.index,
                 "ok" if result.passed else "FAIL", stamp)

    try:
        report = cmd_verify_suite(args.genus, args.seed, args.jobs, progress)
    except SuiteFailure as ex:
        log.error("%s", ex)
        sys.stderr.write(f"FAIL {ex.check}: {ex.witness}\n")
        return 3
    _emit(report.as_dict(), args.out)
    return 0


def cmd_export(args):
    if args.kind == "incidence":
        if args.genus is None:
            raise LLCurveError("incidence export needs --genus")
        _emit_text(io.incidence_to_dot(args.genus), args.out)
        return 0
    graph = io.load_graph(args.graph)
    if args.kind == "nest":
        if args.edge is None:
            raise LLCurveError("nest export needs --edge")
        _emit_text(io.nest_to_dot(flip(Flag(graph, args.edge))), args.out)
        return 0
    _emit_text(io.graph_to_dot(graph, highlight_edge=args.edge), args.out)
    return 0


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="llcurve",
        description="Trivalent-graph curve models: exact section spaces, "
                    "bundle gluing data, Schottky representations.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("graphs", help="enumerate graphs of a genus")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--out")
    p.add_argument("--format", choices=("json", "dot"), default="json")
    p.set_defaults(fn=cmd_graphs)

    p = sub.add_parser("curve-info", help="section-space report of a curve")
    p.add_argument("--graph", required=True)
    p.add_argument("--merged", type=int, default=None, metavar="EDGE")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_curve_info)

    p = sub.add_parser("flip", help="the nest of a flagged edge")
    p.add_argument("--graph", required=True)
    p.add_argument("--edge", type=int, required=True)
    p.add_argument("--format", choices=("json", "dot"), default="json")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_flip)

    p = sub.add_parser("reduce", help="genus reduction along an edge")
    p.add_argument("--graph", required=True)
    p.add_argument("--edge", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_reduce)

    p = sub.add_parser("counts", help="flag and nest counting report")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_counts)

    p = sub.add_parser("bundle", help="canonical form, equivalence, packets")
    p.add_argument("action", choices=("canon", "equiv", "packet"))
    p.add_argument("--graph", required=True)
    p.add_argument("--bundle", required=True)
    p.add_argument("--bundle2")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_bundle)

    p = sub.add_parser("rep", help="verify or evaluate a representation")
    p.add_argument("action", choices=("verify", "eval"))
    p.add_argument("--rep", required=True)
    p.add_argument("--word")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_rep)

    p = sub.add_parser("schottky", help="section of the forgetful map")
    p.add_argument("action", choices=("section", "verify", "roundtrip"))
    p.add_argument("--graph", required=True)
    p.add_argument("--bundle", required=True)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_schottky)

    p = sub.add_parser("verify", help="run the property sweeps")
    p.add_argument("--genus", type=int, default=4, help="genus cap (<= 5)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("export", help="DOT pictures of graphs, nests, incidence")
    p.add_argument("--kind", choices=("graph", "nest", "incidence"),
                   default="graph")
    p.add_argument("--graph")
    p.add_argument("--edge", type=int, default=None)
    p.add_argument("--genus", type=int, default=None)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_export)

    return parser


def main(argv=None):
    level = os.environ.get("LLCURVE_LOG", "WARNING").upper()
    logging.basicConfig(stream=sys.stderr,
                        level=getattr(logging, level, logging.WARNING),
                        format="%(levelname)s %(name)s: %(message)s")
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except IoFailure as ex:
        sys.stderr.write(f"io error: {ex}\n")
        return 4
    except SuiteFailure as ex:
        sys.stderr.write(f"property failure: {ex}\n")
        return 3
    except (LLCurveError, ValueError) as ex:
        sys.stderr.write(f"error: {ex}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
