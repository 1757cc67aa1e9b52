import json

import pytest

from maxbond.cli import main
from maxbond.fileio import format_graph
from maxbond.graphs import Wagner, build_graph, generate


@pytest.fixture
def square(tmp_path):
    path = tmp_path / "c4.graph"
    path.write_text("4 4\n0 1 3\n1 2 1\n2 3 2\n0 3 5\n")
    return str(path)


def run_json(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, [json.loads(line) for line in out.strip().splitlines()]


def test_solve(square, capsys):
    code, docs = run_json(capsys, ["solve", square])
    assert code == 0
    assert docs[0]["value"] == 8
    assert docs[0]["edges"] == [0, 3]
    assert docs[0]["skeleton_stats"] == {"S": 1, "P": 0, "R": 0}


def test_solve_all_negative(tmp_path, capsys):
    path = tmp_path / "neg.graph"
    path.write_text("3 3\n0 1 -1\n1 2 -2\n0 2 -3\n")
    code, docs = run_json(capsys, ["solve", str(path)])
    assert code == 0
    assert docs[0]["value"] == 0 and docs[0]["edges"] == []


def test_solve_k5e_rejects_wagner_block(tmp_path, capsys):
    g = generate(Wagner(8))
    path = tmp_path / "v8.graph"
    # an extra isolated node makes the input non-connected
    path.write_text(format_graph(build_graph(9, list(g.edges))))
    code = main(["solve", str(path), "--mode", "k5e"])
    assert code == 2
    assert "NotK5eMinorFree" in capsys.readouterr().err


def test_missing_file_is_usage_error(capsys):
    assert main(["solve", "/nonexistent.graph"]) == 1


def test_oracle_stream(square, capsys):
    code, docs = run_json(capsys, ["oracle", square, "bonds"])
    assert code == 0
    assert len(docs) == 7
    assert docs[0] == {"side": [], "edges": [], "weight": 0}
    best = max(d["weight"] for d in docs)
    assert best == 8


def test_gen_round_trip(tmp_path, capsys):
    out = tmp_path / "w5.graph"
    assert main(["gen", "wheel", "5", "-o", str(out)]) == 0
    code, docs = run_json(capsys, ["cycle", str(out), "family"])
    assert code == 0 and docs[0]["family"] == "wheel(5)"


def test_gen_all(tmp_path, capsys):
    code, docs = run_json(capsys, ["gen", "all", "-o", str(tmp_path)])
    assert code == 0
    assert len(docs[0]["written"]) == 20


def test_polytope_check_and_facets(tmp_path, capsys):
    c5 = tmp_path / "c5.graph"
    assert main(["gen", "cycle", "5", "-o", str(c5)]) == 0
    code, docs = run_json(capsys, ["polytope", str(c5), "facets"])
    assert code == 0 and len(docs) == 11
    code, docs = run_json(capsys, ["polytope", str(c5), "check",
                                   "--ineq", "cycle-sum:outer"])
    assert code == 0 and docs[0]["facet"] is True
    code, docs = run_json(capsys, ["polytope", str(c5),
                                   "verify-description",
                                   "--description", "cn"])
    assert code == 0 and docs[0]["equal"] is True


def test_spqr_output(square, capsys):
    code, docs = run_json(capsys, ["spqr", square])
    assert code == 0
    assert docs[0]["valid"] is True
    assert [sk["kind"] for sk in docs[0]["skeletons"]] == ["S"]


def test_classify_interleaved(tmp_path, capsys):
    v6 = tmp_path / "v6.graph"
    assert main(["gen", "wagner", "6", "-o", str(v6)]) == 0
    code, docs = run_json(capsys, ["cycle", str(v6), "classify",
                                   "--cycle", "outer"])
    assert code == 0 and docs[0]["interleaved"] is True


def test_suite_filter(capsys):
    code = main(["suite", "--filter", "cycle-facet-description"])
    out = capsys.readouterr().out
    assert code == 0
    assert "[pass] cycle-facet-description" in out
    assert main(["suite", "--filter", "no-such-check"]) == 1


def test_deterministic_output(square, capsys):
    main(["solve", square])
    first = capsys.readouterr().out
    main(["solve", square])
    assert capsys.readouterr().out == first
