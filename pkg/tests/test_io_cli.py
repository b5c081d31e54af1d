"""File formats and the command-line surface: schemas round-trip through
their own parsers, outputs are deterministic, exit codes follow the
0/2/3/4 convention."""

import json
import random
from fractions import Fraction

import pytest

from llcurves import io
from llcurves.bundles import MatrixGluing, ScalarGluing, random_matrix_gluing
from llcurves.cli import main
from llcurves.errors import IoFailure
from llcurves.exact import Mat2, QQi
from llcurves.reps import sample_representation


def test_scalar_serialization():
    assert io.fraction_to_json(Fraction(3, 2)) == "3/2"
    assert io.fraction_from_json("3/2") == Fraction(3, 2)
    z = QQi(Fraction(3, 2), Fraction(-1, 4))
    assert io.qqi_from_json(io.qqi_to_json(z)) == z
    with pytest.raises(IoFailure):
        io.fraction_from_json("1.5")


def test_graph_roundtrip(theta, dumbbell, k4):
    for g in (theta, dumbbell, k4):
        data = io.graph_to_json(g)
        again = io.graph_from_json(json.loads(json.dumps(data)))
        assert again == g


def test_graph_schema_errors():
    with pytest.raises(IoFailure):
        io.graph_from_json({"edges": [{"id": 1, "ends": [0, 1]}]})
    with pytest.raises(IoFailure):
        io.graph_from_json({"nope": []})


def test_bundle_roundtrip(theta):
    rng = random.Random(1)
    scalar = ScalarGluing(theta, (QQi(2), QQi(Fraction(1, 3)), QQi(0, 1)))
    matrix = random_matrix_gluing(theta, rng)
    for bundle in (scalar, matrix):
        data = io.bundle_to_json(bundle)
        again = io.bundle_from_json(json.loads(json.dumps(data)), theta)
        assert again.values == bundle.values


def test_bundle_reversed_orientation(theta):
    data = io.bundle_to_json(ScalarGluing(theta, (2, 3, 5)))
    ends = data["edges"]["0"]["orientation"]
    data["edges"]["0"]["orientation"] = ends[::-1]
    data["edges"]["0"]["value"] = io.qqi_to_json(QQi(Fraction(1, 2)))
    again = io.bundle_from_json(data, theta)
    assert again.values[0] == QQi(2)


def test_rep_roundtrip():
    rho = sample_representation(2, "conjugated", 5)
    again = io.rep_from_json(json.loads(json.dumps(io.rep_to_json(rho))))
    assert again == rho


def test_dot_outputs(theta):
    from llcurves.graphs import Flag, flip

    dot = io.graph_to_dot(theta)
    assert dot.count("--") == 3
    nest_dot = io.nest_to_dot(flip(Flag(theta, 0)))
    assert nest_dot.count("cluster_") == 3
    inc = io.incidence_to_dot(2)
    assert "P0" in inc and "C0" in inc


# -- CLI ------------------------------------------------------------------------


def _write_graph(tmp_path, graph, name="graph.json"):
    path = tmp_path / name
    io.dump_json(io.graph_to_json(graph), path)
    return str(path)


def test_cli_graphs(tmp_path, capsys):
    out = tmp_path / "graphs"
    assert main(["graphs", "--genus", "2", "--out", str(out)]) == 0
    index = json.loads((out / "index.json").read_text())
    assert index["count"] == 2
    assert (out / "graph_000.json").exists()


def test_cli_graphs_genus_floor(capsys):
    assert main(["graphs", "--genus", "1"]) == 2


def test_cli_curve_info(tmp_path, capsys, theta):
    path = _write_graph(tmp_path, theta)
    assert main(["curve-info", "--graph", path]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report == {"genus": 2, "thickness": 3, "dim_K": 2, "dim_2K": 3,
                      "base_points": [], "multidegree": [1, 1]}
    assert main(["curve-info", "--graph", path, "--merged", "0"]) == 0
    merged = json.loads(capsys.readouterr().out)
    assert merged["dim_2K"] is None and merged["multidegree"] == [2]


def test_cli_flip_and_reduce(tmp_path, capsys, k4):
    path = _write_graph(tmp_path, k4)
    assert main(["flip", "--graph", path, "--edge", "0"]) == 0
    nest = json.loads(capsys.readouterr().out)
    assert len(nest["members"]) == 3
    assert main(["reduce", "--graph", path, "--edge", "0"]) == 0
    red = json.loads(capsys.readouterr().out)
    assert len(red["pair"]) == 2


def test_cli_counts(capsys):
    assert main(["counts", "--genus", "2"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["raw"]["etg"] == "6"


def test_cli_bundle(tmp_path, capsys, theta):
    gpath = _write_graph(tmp_path, theta)
    b1 = tmp_path / "b1.json"
    io.dump_json(io.bundle_to_json(ScalarGluing(theta, (2, 3, 5))), b1)
    b2 = tmp_path / "b2.json"
    io.dump_json(io.bundle_to_json(ScalarGluing(theta, (4, 6, 10))), b2)
    assert main(["bundle", "canon", "--graph", gpath, "--bundle", str(b1)]) == 0
    canon = json.loads(capsys.readouterr().out)
    assert canon["tuple"] == [["3/2", "0"], ["5/2", "0"]]
    assert main(["bundle", "equiv", "--graph", gpath, "--bundle", str(b1),
                 "--bundle2", str(b2)]) == 0
    assert json.loads(capsys.readouterr().out)["equivalent"] is True
    # packet on a rank-1 bundle is a validation error
    assert main(["bundle", "packet", "--graph", gpath, "--bundle", str(b1)]) == 2


def test_cli_bundle_packet(tmp_path, capsys, theta):
    gpath = _write_graph(tmp_path, theta)
    bp = tmp_path / "rank2.json"
    io.dump_json(io.bundle_to_json(
        MatrixGluing(theta, (Mat2.identity(),) * 3)), bp)
    assert main(["bundle", "packet", "--graph", gpath, "--bundle", str(bp)]) == 0
    packet = json.loads(capsys.readouterr().out)
    assert packet == {"packet_dim": 6, "automorphism_dim": 3, "difference": 3}


def test_cli_rep(tmp_path, capsys):
    rho = sample_representation(2, "schottky", 8)
    rpath = tmp_path / "rep.json"
    io.dump_json(io.rep_to_json(rho), rpath)
    assert main(["rep", "verify", "--rep", str(rpath)]) == 0
    verdict = json.loads(capsys.readouterr().out)
    assert verdict == {"relation_holds": True, "on_schottky_locus": True}
    assert main(["rep", "eval", "--rep", str(rpath), "--word", "m1 m1^-1"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["matrix"][0][0] == ["1", "0"]


def test_cli_schottky(tmp_path, capsys, theta):
    gpath = _write_graph(tmp_path, theta)
    bpath = tmp_path / "bundle.json"
    rng = random.Random(12)
    io.dump_json(io.bundle_to_json(random_matrix_gluing(theta, rng)), bpath)
    assert main(["schottky", "section", "--graph", gpath, "--bundle",
                 str(bpath)]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["genus"] == 2
    assert main(["schottky", "roundtrip", "--graph", gpath, "--bundle",
                 str(bpath)]) == 0
    verdict = json.loads(capsys.readouterr().out)
    assert all(verdict.values())


def test_cli_export(tmp_path, capsys, theta):
    gpath = _write_graph(tmp_path, theta)
    assert main(["export", "--kind", "graph", "--graph", gpath]) == 0
    assert "--" in capsys.readouterr().out
    assert main(["export", "--kind", "nest", "--graph", gpath,
                 "--edge", "0"]) == 0
    capsys.readouterr()
    assert main(["export", "--kind", "incidence", "--genus", "2"]) == 0
    capsys.readouterr()


def test_cli_exit_codes(tmp_path, capsys):
    missing = str(tmp_path / "nope.json")
    assert main(["curve-info", "--graph", missing]) == 4
    corrupt = tmp_path / "bad.json"
    corrupt.write_text("{not json")
    assert main(["curve-info", "--graph", str(corrupt)]) == 4
    invalid = tmp_path / "invalid.json"
    io.dump_json({"vertices": [0, 1], "edges": [{"id": 0, "ends": [0, 1]}]},
                 invalid)
    assert main(["curve-info", "--graph", str(invalid)]) == 2
    capsys.readouterr()


def test_cli_determinism(tmp_path, capsys, theta):
    path = _write_graph(tmp_path, theta)
    assert main(["curve-info", "--graph", path]) == 0
    first = capsys.readouterr().out
    assert main(["curve-info", "--graph", path]) == 0
    assert capsys.readouterr().out == first
