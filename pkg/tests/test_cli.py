import json
import subprocess
import sys

import pytest

from spg.cli import main
from spg.formats import format_edge_list, format_graph_json
from spg.graph import Graph, claw, complete_bipartite, cycle_graph, path_graph
from spg.isomorphism import is_isomorphic

BILAYER = Graph(6, [(0, 1), (0, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 5), (4, 5)])


@pytest.fixture
def write(tmp_path):
    def _write(g, name="g.txt", fmt="edges"):
        path = tmp_path / name
        path.write_text(format_edge_list(g) if fmt == "edges" else format_graph_json(g))
        return str(path)

    return _write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_compute_gadget_to_dot(write, capsys):
    n = 3
    gadget = Graph(n + 3, [(0, i) for i in range(1, n + 1)] + [(i, n + 1) for i in range(1, n + 1)] + [(n + 1, n + 2)])
    code, out, _ = run(capsys, "compute", write(gadget), "-a", "0", "-b", str(n + 2), "--out", "dot")
    assert code == 0
    assert out.startswith("graph SPG {") and out.count("--") == 3 and out.count('label="1"') == 3


def test_compute_json_round_trips_through_classify(write, capsys, tmp_path):
    out_path = tmp_path / "spg.json"
    code, _, _ = run(capsys, "compute", write(BILAYER), "-a", "0", "-b", "5", "-o", str(out_path))
    assert code == 0
    data = json.loads(out_path.read_text())
    assert sorted(lab for *_, lab in data["edges"]) == [1, 1, 2, 2]
    code, out, _ = run(capsys, "classify", str(out_path))
    assert code == 0 and json.loads(out)["status"] == "UnknownContainsC4"
    code, out, _ = run(capsys, "verify", str(out_path))
    assert code == 0 and out.startswith("PASS")


def test_compute_errors(write, capsys, monkeypatch):
    disconnected = Graph(3, [(0, 1)])
    assert run(capsys, "compute", write(disconnected), "-a", "0", "-b", "2")[0] == 2
    assert run(capsys, "compute", write(BILAYER), "-a", "0", "-b", "5", "--max-paths", "3")[0] == 3
    monkeypatch.setenv("SPG_MAX_PATHS", "2")
    assert run(capsys, "compute", write(BILAYER), "-a", "0", "-b", "5")[0] == 3
    monkeypatch.setenv("SPG_MAX_PATHS", "lots")
    assert run(capsys, "compute", write(BILAYER), "-a", "0", "-b", "5")[0] == 1
    monkeypatch.delenv("SPG_MAX_PATHS")
    assert run(capsys, "compute", write(BILAYER), "-a", "0", "-b", "9")[0] == 1
    assert run(capsys, "compute", write(BILAYER), "-a", "0", "-b", "0")[0] == 1


@pytest.mark.parametrize(
    "g, status",
    [(cycle_graph(5), "NotSpg"), (cycle_graph(6), "SpgByTheorem"), (claw(), "NotSpg")],
)
def test_classify_verdicts_exit_zero(write, capsys, g, status):
    code, out, _ = run(capsys, "classify", write(g, fmt="json"))
    assert code == 0 and json.loads(out)["status"] == status


def test_classify_spg_includes_parities(write, capsys):
    code, out, _ = run(capsys, "classify", write(cycle_graph(6)))
    d = json.loads(out)["decomposition"]
    assert len(d["cliques"]) == 6 and sorted(d["parity"]) == [1, 1, 1, 2, 2, 2]


def test_forbidden_k23(write, capsys):
    code, out, _ = run(capsys, "forbidden", write(complete_bipartite(2, 3)))
    assert code == 0
    assert {w["pattern"] for w in json.loads(out)} >= {"K2,3", "C4"}


@pytest.mark.parametrize("text", ["3 2\n0 1\n", "not a graph", '{"n": 2, "edges": [[0, 5]]}', '{"geodesics": [[1]], "edges": [[0, 0, 1]], "a": 0, "b": 2}'])
def test_malformed_input_exit_one(tmp_path, capsys, text):
    path = tmp_path / "bad.txt"
    path.write_text(text)
    for verb in ("classify", "forbidden", "synthesize", "verify"):
        assert run(capsys, verb, str(path))[0] == 1
    assert run(capsys, "classify", str(tmp_path / "missing.txt"))[0] == 1


def test_synthesize_and_verify_c6(write, capsys, tmp_path):
    cert_path = tmp_path / "cert.json"
    code, _, _ = run(capsys, "synthesize", write(cycle_graph(6)), "--out", str(cert_path))
    assert code == 0
    cert = json.loads(cert_path.read_text())
    assert cert["index_levels"] == 2 and len(cert["correspondence"]) == 6
    base = Graph(cert["base"]["n"], [tuple(e) for e in cert["base"]["edges"]])
    from spg.geodesics import build_spg

    assert is_isomorphic(build_spg(base, cert["a"], cert["b"]).graph, cycle_graph(6)) is not None
    code, out, _ = run(capsys, "verify", write(cycle_graph(6)))
    assert code == 0 and out.splitlines()[0] == "PASS"


def test_synthesize_tree_log(write, capsys):
    tree = Graph(5, [(0, 1), (0, 2), (1, 2), (2, 3), (3, 4)])
    code, out, _ = run(capsys, "synthesize", write(tree))
    ops = [step["op"] for step in json.loads(out)["log"]]
    assert code == 0 and ops[0] == "synth_complete" and set(ops[1:]) == {"one_sum_clique"}


def test_synthesize_precondition_exit_four(write, capsys):
    code, _, err = run(capsys, "synthesize", write(claw()))
    assert code == 4 and "NotSpg" in err
    assert run(capsys, "verify", write(cycle_graph(7)))[0] == 4


def test_unwritable_output(write, capsys, tmp_path):
    target = tmp_path / "no" / "such" / "dir" / "cert.json"
    assert run(capsys, "synthesize", write(path_graph(3)), "--out", str(target))[0] == 1


def test_search(capsys, tmp_path):
    catalog = tmp_path / "cat.jsonl"
    code, out, _ = run(capsys, "search", "--max-base-vertices", "5", "--catalog", str(catalog))
    assert code == 0 and "FAIL" not in out and "(3 new)" in out
    first = catalog.read_text()
    code, out2, _ = run(capsys, "search", "-n", "5", "--catalog", str(catalog))
    assert code == 0 and "(0 new)" in out2 and catalog.read_text() == first
    assert out.splitlines()[1:] == out2.splitlines()[1:]
    assert run(capsys, "search", "-n", "2")[0] == 4
    assert run(capsys, "search", "-n", "4", "--catalog", str(tmp_path / "missing" / "c.jsonl"))[0] == 1


def test_module_entry_point_help():
    res = subprocess.run([sys.executable, "-m", "spg", "--help"], capture_output=True, text=True)
    assert res.returncode == 0
    for word in ("compute", "classify", "synthesize", "verify", "search", "forbidden", "SPG_MAX_PATHS", "exit codes"):
        assert word in res.stdout
