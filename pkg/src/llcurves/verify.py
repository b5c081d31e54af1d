"""Batch property sweeps tying the modules together.

Each check is a picklable task descriptor so sweeps can fan out over
processes; results merge in task order, making reports reproducible
byte-for-byte for a given (genus cap, seed, version).  Wall-clock timings
are collected separately and never enter the deterministic payload.
"""

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import __version__
from .bundles import (
    MatrixGluing,
    canonical_form,
    form_to_gluing,
    gauge_apply,
    line_equivalent,
    packet_dim,
    automorphism_dim,
    random_diagonal_gluing,
    random_gauge,
    random_matrix_gluing,
    random_scalar_gluing,
    random_unimodular,
    sl2_equivalent,
)
from .curves import base_points, bicanonical_space, canonical_space, ll_curve
from .errors import SuiteFailure
from .exact import Mat2
from .graphs import Flag, counting_report, enumerate_graphs, flip, insert_edge, \
    reduce_genus, thickness
from .reps import forgetful, on_schottky_locus, schottky_section, \
    schottky_unique, verify_relation
from .words import circle_words
from .bundles import CanonicalBundleForm
from .graphs import spanning_tree

SCALAR_SAMPLES = 1000
MATRIX_SAMPLES = 1000
PACKET_SAMPLES = 100
SCHOTTKY_SAMPLES = 1000

DIMS_GENUS_CAP = 5
SWEEP_GENUS_CAP = 4
COUNTING_GENUS_CAP = 3


@dataclass(frozen=True)
class CheckResult:
    name: str
    genus: int
    index: int
    passed: bool
    samples: int
    witness: str

    def as_dict(self):
        return {"name": self.name, "genus": self.genus, "index": self.index,
                "passed": self.passed, "samples": self.samples,
                "witness": self.witness}


@dataclass(frozen=True)
class RunReport:
    """Deterministic outcome of a verification run."""

    version: str
    seed: int
    genus_max: int
    checks: tuple

    @property
    def all_passed(self):
        return all(c.passed for c in self.checks)

    def first_failure(self):
        return next((c for c in self.checks if not c.passed), None)

    def as_dict(self):
        return {"version": self.version, "seed": self.seed,
                "genus_max": self.genus_max,
                "all_passed": self.all_passed,
                "checks": [c.as_dict() for c in self.checks]}


def _task_seed(seed, tag, genus, index):
    return seed * 1_000_003 + tag * 7919 + genus * 1009 + index * 31


def _check_dims(genus, index):
    graph = enumerate_graphs(genus)[index]
    cs = canonical_space(ll_curve(graph))
    bs = bicanonical_space(graph)
    ok = (cs.dimension == genus
          and cs.rank == 5 * genus - 6
          and bs.dimension == 3 * genus - 3
          and bs.functional_rank([2 * k for k in range(graph.num_edges)])
          == 3 * genus - 3)
    witness = "" if ok else (f"dims K={cs.dimension} rank={cs.rank} "
                             f"2K={bs.dimension}")
    return CheckResult("canonical_bicanonical_dims", genus, index, ok, 1, witness)


def _check_artamkin(genus, index):
    graph = enumerate_graphs(genus)[index]
    bp = base_points(graph)
    th = thickness(graph)
    ok = (len(bp) == 0) == (th >= 2)
    witness = "" if ok else f"base_points={sorted(bp)} thickness={th}"
    return CheckResult("artamkin_base_points", genus, index, ok, 1, witness)


def _check_counting(genus, _index):
    report = counting_report(genus)
    ok = report.cover_consistent
    witness = "" if ok else "nest cover bookkeeping inconsistent"
    detail = (f"identity raw={report.raw.identity_holds} "
              f"classes={report.classes.identity_holds} "
              f"weighted={report.weighted.identity_holds}")
    return CheckResult("counting_cover", genus, 0, ok, 1,
                       witness or detail)


def _check_flips(genus, index):
    graph = enumerate_graphs(genus)[index]
    for edge in range(graph.num_edges):
        flag = Flag(graph, edge)
        nest = flip(flag)
        if graph.is_loop(edge):
            if any(f.canonical_key != flag.canonical_key for f in nest.flags):
                return CheckResult("flip_nest_coherence", genus, index, False,
                                   1, f"loop flag {edge} not fixed")
        for member in nest.flags:
            if flip(member) != nest:
                return CheckResult("flip_nest_coherence", genus, index, False,
                                   1, f"nest of edge {edge} not coherent")
        try:
            reduced, pair = reduce_genus(flag)
        except Exception:
            continue
        back = insert_edge(reduced, pair)
        if not back.is_isomorphic_to(graph):
            return CheckResult("flip_nest_coherence", genus, index, False, 1,
                               f"reduce/insert round trip failed at edge {edge}")
    return CheckResult("flip_nest_coherence", genus, index, True,
                       graph.num_edges, "")


def _check_gauge(genus, index, seed):
    graph = enumerate_graphs(genus)[index]
    rng = random.Random(seed)
    g = graph.genus
    for i in range(SCALAR_SAMPLES):
        a = random_scalar_gluing(graph, rng)
        gauged = gauge_apply(a, random_gauge(graph, rng, 1))
        form = canonical_form(a)
        if len(form.values) != g:
            return CheckResult("gauge_scalar", genus, index, False, i,
                               "tuple length != g")
        if not line_equivalent(a, gauged):
            return CheckResult("gauge_scalar", genus, index, False, i,
                               "gauge orbit not detected equivalent")
        if canonical_form(form_to_gluing(form)).values != form.values:
            return CheckResult("gauge_scalar", genus, index, False, i,
                               "tuple coordinates not free")
    for i in range(MATRIX_SAMPLES):
        a = random_matrix_gluing(graph, rng)
        gauged = gauge_apply(a, random_gauge(graph, rng, 2))
        form = canonical_form(a)
        if len(form.values) != g:
            return CheckResult("gauge_rank2", genus, index, False, i,
                               "tuple length != g")
        if not sl2_equivalent(a, gauged):
            return CheckResult("gauge_rank2", genus, index, False, i,
                               "gauge orbit not detected equivalent")
        if canonical_form(form_to_gluing(form)).values != form.values:
            return CheckResult("gauge_rank2", genus, index, False, i,
                               "tuple coordinates not free")
    return CheckResult("gauge_quotients", genus, index, True,
                       SCALAR_SAMPLES + MATRIX_SAMPLES, "")


def _check_packet(genus, index, seed):
    graph = enumerate_graphs(genus)[index]
    rng = random.Random(seed)
    target = 3 * graph.genus - 3
    gluings = [MatrixGluing(graph, (Mat2.identity(),) * graph.num_edges),
               random_diagonal_gluing(graph, rng)]
    gluings.extend(random_matrix_gluing(graph, rng)
                   for _ in range(PACKET_SAMPLES))
    for i, a in enumerate(gluings):
        if packet_dim(a) - automorphism_dim(a) != target:
            return CheckResult("packet_identity", genus, index, False, i,
                               f"packet={packet_dim(a)} aut={automorphism_dim(a)}")
    return CheckResult("packet_identity", genus, index, True, len(gluings), "")


def _check_schottky(genus, index, seed):
    graph = enumerate_graphs(genus)[index]
    rng = random.Random(seed)
    cw = circle_words(graph)
    tree = spanning_tree(graph).tree_edges
    g = graph.genus
    for i in range(SCHOTTKY_SAMPLES):
        values = tuple(random_unimodular(rng) for _ in range(g))
        form = CanonicalBundleForm(graph, 2, tree, values,
                                   "simultaneous_conjugation")
        rho = schottky_section(form)
        if not verify_relation(rho):
            return CheckResult("schottky", genus, index, False, i,
                               "section violates the relation")
        if not on_schottky_locus(rho):
            return CheckResult("schottky", genus, index, False, i,
                               "section off the locus")
        back = forgetful(rho, cw)
        if back.values != form.values or not back.equivalent_to(form):
            return CheckResult("schottky", genus, index, False, i,
                               "forgetful round trip failed")
        if not schottky_unique(form):
            return CheckResult("schottky", genus, index, False, i,
                               "uniqueness check failed")
    return CheckResult("schottky", genus, index, True, SCHOTTKY_SAMPLES, "")


_RUNNERS = {
    "dims": _check_dims,
    "artamkin": _check_artamkin,
    "counting": _check_counting,
    "flips": _check_flips,
}
_SEEDED_RUNNERS = {
    "gauge": (_check_gauge, 1),
    "packet": (_check_packet, 2),
    "schottky": (_check_schottky, 3),
}


def _run_task(desc):
    kind, genus, index, seed = desc
    if kind in _RUNNERS:
        return _RUNNERS[kind](genus, index)
    fn, tag = _SEEDED_RUNNERS[kind]
    return fn(genus, index, _task_seed(seed, tag, genus, index))


def build_tasks(genus_max, seed):
    """Deterministic task list for a verification run."""
    tasks = []
    for g in range(2, min(genus_max, DIMS_GENUS_CAP) + 1):
        for i in range(len(enumerate_graphs(g))):
            tasks.append(("dims", g, i, seed))
            tasks.append(("artamkin", g, i, seed))
    for g in range(2, min(genus_max, COUNTING_GENUS_CAP) + 1):
        tasks.append(("counting", g, 0, seed))
    for g in range(2, min(genus_max, SWEEP_GENUS_CAP) + 1):
        for i in range(len(enumerate_graphs(g))):
            tasks.append(("flips", g, i, seed))
            tasks.append(("gauge", g, i, seed))
            tasks.append(("packet", g, i, seed))
        # the Schottky sweep is per genus; spread a canonical graph choice
        tasks.append(("schottky", g, 0, seed))
    return tasks


def run_verify_suite(genus_max=4, seed=0, jobs=1, progress=None):
    """Run every sweep up to the genus cap; returns a :class:`RunReport`.

    ``progress``, if given, is called with (task, result, seconds) after
    each task; timings stay out of the report.
    """
    if genus_max > 5:
        raise ValueError("genus_max is capped at 5")
    tasks = build_tasks(genus_max, seed)
    results = []
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for task, result in zip(tasks, pool.map(_run_task, tasks)):
                if progress:
                    progress(task, result, None)
                results.append(result)
    else:
        for task in tasks:
            t0 = time.perf_counter()
            result = _run_task(task)
            if progress:
                progress(task, result, time.perf_counter() - t0)
            results.append(result)
    return RunReport(__version__, seed, genus_max, tuple(results))


def cmd_verify_suite(genus_max=4, seed=0, jobs=1, progress=None):
    """Like :func:`run_verify_suite` but raises on the first failure."""
    report = run_verify_suite(genus_max, seed, jobs, progress)
    if not report.all_passed:
        bad = report.first_failure()
        raise SuiteFailure(bad.name,
                           f"genus {bad.genus} graph {bad.index}: {bad.witness}")
    return report
