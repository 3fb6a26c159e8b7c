from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from sqfpow.cli import main, parse_graph_text, UsageError
from tests.conftest import EXAMPLE_EDGES


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


@pytest.fixture
def example_file(tmp_path):
    p = tmp_path / "example28.edges"
    body = "\n".join(f"{u} {v}" for u, v in EXAMPLE_EDGES)
    p.write_text(f"# the 11-vertex tree\nn 11\n{body}\n", encoding="utf-8")
    return str(p)


def test_graph_file_format():
    G = parse_graph_text("n 6\n# comment\n1 2  # trailing\n2 3\n")
    assert G.n == 6 and G.edges == {(1, 2), (2, 3)}
    assert parse_graph_text("1 2\n2 5\n").n == 5
    with pytest.raises(UsageError):
        parse_graph_text("1 2\nn 4\n")
    with pytest.raises(UsageError):
        parse_graph_text("1 x\n")


def test_profile_path():
    code, out = run("profile", "--family", "path:7", "--json")
    assert code == 0
    assert [r["g"] for r in json.loads(out)["rows"]] == [2, 1, 0]


def test_profile_example_file(example_file):
    code, out = run("profile", "--graph", example_file, "--k", "2", "--json")
    assert code == 0
    (row,) = json.loads(out)["rows"]
    assert row["g"] == 1 and row["depth"] == 4


def test_profile_triangle_over_q():
    code, out = run("profile", "--family", "cycle:3", "--field", "q")
    assert code == 0 and out.count("oracle") == 1


def test_betti_json():
    code, out = run("betti", "--family", "path:3", "--power", "1")
    doc = json.loads(out)
    assert code == 0
    assert doc["betti"] == [{"i": 0, "j": 2, "beta": 2}, {"i": 1, "j": 3, "beta": 1}]
    assert set(doc) == {"n", "ideal", "field", "betti", "projdim", "reg", "depth_quotient"}
    code, out = run("betti", "--family", "path:4", "--power", "2")
    assert json.loads(out)["betti"] == [{"i": 0, "j": 4, "beta": 1}]
    assert run("betti", "--family", "path:4", "--power", "2") == (code, out)


def test_betti_field_from_environment(monkeypatch):
    monkeypatch.setenv("SQFPOW_FIELD", "gf3")
    assert json.loads(run("betti", "--family", "path:3")[1])["field"] == "gf3"


def test_usage_errors(example_file):
    assert run("betti", "--family", "path:3", "--power", "2")[0] == 2
    assert run("explore-cycles", "--n-max", "64")[0] == 2
    assert run("profile")[0] == 2
    assert run("profile", "--family", "path:3", "--graph", example_file)[0] == 2
    assert run("profile", "--family", "wheel:5")[0] == 2
    assert run("profile", "--family", "path:5", "--field", "gf4")[0] == 2
    assert run("verify", "--suite", "nope")[0] == 2
    assert run("nonsense")[0] == 2


def test_explore_cycles():
    code, out = run("explore-cycles", "--n-max", "8")
    assert code == 0
    assert sum(1 for line in out.splitlines() if line.strip().startswith(("3 ", "4 ", "5 ", "6 ", "7 ", "8 "))) == 15


def test_verify_suites(example_file):
    assert run("verify", "--suite", "path", "--n-max", "10")[0] == 0
    assert run("verify", "--suite", "section4", "--family", "random-forest", "--trials", "50", "--seed", "7")[0] == 0
    assert run("verify", "--suite", "splitting", "--graph", example_file)[0] == 0
    for suite in ("forest-recursion", "char-independence", "nonincreasing"):
        assert run("verify", "--suite", suite, "--n-max", "6")[0] == 0, suite


def test_verify_rejects_non_forest():
    assert run("verify", "--suite", "nonincreasing", "--family", "cycle:5")[0] == 2


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "sqfpow", "betti", "--family", "path:3"], capture_output=True, text=True)
    assert r.returncode == 0 and json.loads(r.stdout)["reg"] == 2
