from __future__ import annotations

import json
from fractions import Fraction

import pytest

from fracgraph.audit import (
    audit_patterns,
    bad_four_vertex,
    four_vertex_without_four_neighbour,
    lemma4_audit,
    triangles_sharing_edge,
    triangles_sharing_vertex,
)
from fracgraph.cli import exceptional_rows, main
from fracgraph.enumerate import EnumerationSpec
from fracgraph.errors import DomainError
from fracgraph.graph import Graph
from fracgraph.graph6 import write_graph6
from fracgraph.ops import complete_bipartite, complete_graph, cycle_graph, petersen_graph, strong_product
from fracgraph.patterns import c82, f8, f11
from fracgraph.verify import (
    GapReport,
    VerificationRecord,
    gap_report,
    verify_graph,
    verify_graphs,
    verify_theorem,
)


def test_exception_row():
    r = verify_graph(c82())
    assert r.chi_f == 4 and r.n == 8
    assert not r.bound_ok and r.is_exception and not r.demand_feasible
    assert r.consistent


def test_record_json_round_trip():
    r = verify_graph(f8().graph)
    line = r.to_json()
    row = json.loads(line)
    assert row["chi_f"] == "7/2" and "elapsed" not in row
    back = VerificationRecord.from_json(line)
    assert back.chi_f == Fraction(7, 2) and back.graph6 == r.graph6
    assert json.loads(r.to_json(timings=True))["elapsed"] >= 0


def test_reports_identical_across_job_counts():
    spec = EnumerationSpec(6)
    one = verify_theorem(spec, jobs=1).lines()
    two = verify_theorem(spec, jobs=2).lines()
    assert one == two
    assert one == verify_theorem(spec, jobs=1).lines()


def test_sweep_to_eight():
    report = verify_theorem(EnumerationSpec(8))
    assert len(report.exceptions()) == 1
    assert report.exceptions()[0].chi_f == 4
    assert report.violations() == []
    assert all(r.consistent for r in report.records)
    assert report.gap.min_gap >= Fraction(1, 8)


def test_gap_report_skips_exception():
    rows = verify_graphs([c82(), cycle_graph(5), complete_graph(3)]).records
    gap = gap_report(rows)
    assert gap.min_gap == 1 and gap.witness == write_graph6(complete_graph(3))
    assert gap_report([]) == GapReport(None, None)


def test_audit_examples():
    entries = {e.name: e for e in audit_patterns(f8().graph)}
    assert entries["F5"].present
    c = {e.name: e for e in audit_patterns(c82())}
    assert c["two triangles sharing an edge"].present
    assert not c["K4"].present
    hit = triangles_sharing_edge(c82())
    assert {hit["u"], hit["v"]} <= set(c82().adj(hit["w"])) | {hit["w"]}
    assert not any(e.present for e in audit_patterns(cycle_graph(6)))


def test_predicates():
    # K4 minus an edge with a pendant at each degree-2 vertex: both tips have degree 3
    g = Graph(6, [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 4), (3, 5)])
    assert triangles_sharing_edge(g) is not None
    bowtie = Graph(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])
    assert triangles_sharing_edge(bowtie) is None
    assert triangles_sharing_vertex(bowtie)["shared"] == 2
    assert triangles_sharing_vertex(g) is None
    hit = triangles_sharing_vertex(c82())
    assert len(set(hit["first"]) & set(hit["second"])) == 1
    assert bad_four_vertex(bowtie) is None
    host = Graph(7, bowtie.edges() + [(0, 5), (1, 6)])  # 0 and 1 now have degree 3
    assert bad_four_vertex(host)["v"] == 2
    assert four_vertex_without_four_neighbour(host) == {"v": 2}
    assert four_vertex_without_four_neighbour(c82()) is None


def test_lemma4_audit_examples():
    assert all(a.e == 6 and not a.met for a in lemma4_audit(c82()))
    pet = lemma4_audit(petersen_graph())
    assert len(pet) == 10 and all(a.e == 6 and a.met for a in pet)
    k33 = lemma4_audit(complete_bipartite(3, 3))
    assert all(a.degree == 3 and a.e == 6 and a.met for a in k33)
    with pytest.raises(DomainError):
        lemma4_audit(strong_product(cycle_graph(5), complete_graph(2)))


def test_exceptional_table():
    rows = {r[0]: r[1:] for r in exceptional_rows()}
    assert rows["C8^2"] == (4, 4, 3, 4)
    assert rows["C5xK2"] == (5, 5, 4, 5)
    assert rows["C5xK3"] == (Fraction(15, 2), 8, 6, 8)


@pytest.fixture
def g6file(tmp_path):
    path = tmp_path / "graphs.g6"
    path.write_text(write_graph6(f8().graph) + "\n" + write_graph6(f11().graph) + "\n")
    return path


def test_cli_chif_and_demand(g6file, capsys):
    assert main(["chif", str(g6file)]) == 0
    out = capsys.readouterr().out.split("\n")
    assert out[0].endswith(" 7/2") and out[1].endswith(" 10/3")
    assert main(["demand", str(g6file), "--n", "31"]) == 0
    out = capsys.readouterr().out
    assert out.count("N=31") == 2 and "feasible=yes" in out


def test_cli_demand_infeasible(tmp_path, capsys):
    path = tmp_path / "c82.g6"
    path.write_text(write_graph6(c82()) + "\n")
    assert main(["demand", str(path)]) == 1
    assert "cover=32/31 feasible=no" in capsys.readouterr().out


def test_cli_enumerate_and_verify(tmp_path, capsys):
    out = tmp_path / "g.g6"
    assert main(["enumerate", "--max-n", "5", "--out", str(out)]) == 0
    assert len(out.read_text().split()) == 1 + 1 + 2 + 5 + 17
    report = tmp_path / "r.jsonl"
    assert main(["verify", "--max-n", "8", "--out", str(report)]) == 0
    text = capsys.readouterr().out
    assert "exceptions: 1" in text and "violations: 0" in text
    lines = report.read_text().splitlines()
    assert json.loads(lines[-1])["min_gap"] == "1/3"
    assert sum(json.loads(x).get("is_exception", False) for x in lines[:-1]) == 1


def test_cli_patterns_and_exceptional(g6file, capsys):
    assert main(["patterns", str(g6file)]) == 0
    assert "F5: yes" in capsys.readouterr().out
    assert main(["exceptional"]) == 0
    out = capsys.readouterr().out
    assert "15/2" in out


def test_cli_usage_errors(tmp_path, capsys):
    with pytest.raises(SystemExit) as err:
        main(["verify"])
    assert err.value.code == 2
    with pytest.raises(SystemExit) as err:
        main(["nonsense"])
    assert err.value.code == 2
    assert main(["chif", str(tmp_path / "missing.g6")]) == 2
    bad = tmp_path / "bad.g6"
    bad.write_text("A\n")
    assert main(["chif", str(bad)]) == 2
    assert "byte" in capsys.readouterr().err
