import json
import subprocess
import sys

import pytest

from nsgraph.cli import parse_hypernode, run
from nsgraph.catalog import builtin
from nsgraph.graphzero import NodeRef


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_dist(capsys):
    code, out, _ = call(capsys, "dist", "--builtin", "grid2d", "p(0,0)", "p(3,-4)")
    assert code == 0 and out.strip() == "7"


def test_dist_json(capsys):
    code, out, _ = call(capsys, "dist", "--builtin", "ladder_with_tail", "t(3)", "x(40)", "--json")
    assert code == 0 and json.loads(out)["distance"] == "5"


def test_wdist_with_walk(capsys):
    code, out, _ = call(capsys, "wdist", "--builtin", "diamond_chain", "j(0,1)", "j(2,1)", "--walk")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "w*4" and "X(1)" in lines[1]


def test_hyperdist(capsys):
    code, out, _ = call(capsys, "hyperdist", "--builtin", "one_ended_path", "x(0)", "x(n)", "--json")
    data = json.loads(out)
    assert code == 0 and data["hyperdistance"] == "n" and data["limited"] == "no"
    assert data["first"][:3] == ["0", "1", "2"]


def test_classify(capsys):
    code, out, _ = call(capsys, "classify", "--builtin", "endless_path", "x(0)", "x(n)", "x(n+3)", "--json")
    data = json.loads(out)
    assert code == 0 and data["galaxy"]["classes"] == [[0], [1, 2]]
    assert data["kinds"] == ["principal", "nonprincipal", "nonprincipal"]


def test_classify_rank1(capsys):
    code, out, _ = call(capsys, "classify", "--builtin", "endless_1path", "X(0)", "X(1)", "p(0,n)", "--json")
    data = json.loads(out)
    assert data["zero_galaxy"]["singletons"] == [0, 1, 2]
    assert data["one_galaxy"]["classes"] == [[0, 1, 2]]


def test_strict_exit_on_undetermined(capsys):
    argv = ["hyperdist", "--builtin", "endless_path", "x(0)", "x(n*(n%2))"]
    assert call(capsys, *argv)[0] == 0
    assert call(capsys, *argv, "--strict")[0] == 2
    assert call(capsys, *argv, "--strict", "--oracle", "residues=2:0")[0] == 0


def test_chain_and_report(capsys):
    code, out, _ = call(capsys, "chain", "--builtin", "one_ended_path", "--v", "x(n)", "--depth", "1")
    assert code == 0 and out.splitlines()[1].startswith("+0  [x(n)]")
    code, out, _ = call(capsys, "report", "--builtin", "grid2d", "--depth", "1", "--json")
    data = json.loads(out)
    assert code == 0 and data["chain"]["ok"] and data["order"]["ok"]


def test_rank1_chain(capsys):
    code, out, _ = call(capsys, "chain", "--builtin", "diamond_chain", "--x", "X(0)", "--depth", "1", "--json")
    assert code == 0 and len(json.loads(out)["handles"]) == 3


@pytest.mark.parametrize("argv,expected", [
    (["dist", "p(0,0)", "p(1,1)"], 64),
    (["dist", "--builtin", "grid2d", "p(0,0", "p(1,1)"], 64),
    (["dist", "--builtin", "grid2d", "p(0,0)"], 64),
    (["hyperdist", "--builtin", "grid2d", "p(n,m)", "p(0,0)"], 64),
    (["dist", "--builtin", "grid2d", "--oracle", "residues=0:1", "p(0,0)", "p(0,1)"], 64),
    (["dist", "--builtin", "nope", "a", "b"], 64),
    (["dist", "--builtin", "one_ended_path", "x(-1)", "x(0)"], 65),
    (["dist", "--builtin", "diamond_chain", "j(0,0)", "j(0,1)"], 65),
    (["dist", "--graph", "/nonexistent/graph.json", "a", "b"], 65),
    (["chain", "--builtin", "endless_path", "--v", "x(3)"], 65),
    (["chain", "--builtin", "ladder_of_endless_paths", "--x", "n1(0)"], 65),
])
def test_exit_codes(capsys, argv, expected):
    assert call(capsys, *argv)[0] == expected


def test_export_and_reload(capsys, tmp_path):
    path = tmp_path / "dc.json"
    assert call(capsys, "export-builtin", "diamond_chain", "-o", str(path))[0] == 0
    code, out, _ = call(capsys, "wdist", "--graph", str(path), "X(0)", "X(3)")
    assert code == 0 and out.strip() == "w*6"
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert call(capsys, "dist", "--graph", str(bad), "a", "b")[0] == 64


def test_help_exits_cleanly(capsys):
    assert call(capsys, "--help")[0] == 0


def test_verify_examples(capsys):
    code, out, _ = call(capsys, "verify-examples")
    assert code == 0 and out.splitlines()[-1].endswith("checks passed")
    assert "FAIL" not in out


def test_parse_hypernode_templates():
    g = builtin("grid2d")
    h = parse_hypernode(g, "[p(2*n+1, n//3)]")
    assert [h.at(n) for n in range(4)] == [NodeRef("p", (2 * n + 1, n // 3)) for n in range(4)]


def test_console_script():
    res = subprocess.run([sys.executable, "-m", "nsgraph.cli", "dist", "--builtin", "endless_path", "x(-2)", "x(5)"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.strip() == "7"
