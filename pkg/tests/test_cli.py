import json

import pytest
from typer.testing import CliRunner

from main import run_cli
from routers.app import cli_router
from utils.formats import parse_decomposition, parse_minor_model

runner = CliRunner()

K4 = "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n"
C6 = "6 6\n0 1\n1 2\n2 3\n3 4\n4 5\n0 5\n"
PATH3 = "3 2\n0 1\n1 2\n"


@pytest.fixture(autouse=True)
def no_config(monkeypatch):
    monkeypatch.delenv("MINORCERT_CONFIG", raising=False)


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return write


def test_decompose_wheel_on_k4_writes_a_model(files, tmp_path):
    graph = files("k4.txt", K4)
    result = runner.invoke(cli_router, ["decompose", "--pattern", "wheel", "-k", "3", graph])
    assert result.exit_code == 0, result.output
    assert "minor wheel(k=3)" in result.output
    model = parse_minor_model((tmp_path / "k4.minor.json").read_text())
    assert set(model.branch) == {0, 1, 2, 3}


def test_decompose_apex_forest_then_verify(files, tmp_path):
    graph = files("c6.txt", C6)
    forest = files("tree.txt", PATH3)
    out = tmp_path / "c6.td"
    result = runner.invoke(
        cli_router, ["decompose", "--pattern", "apex-forest", "--forest", forest, graph, "--out", str(out)]
    )
    assert result.exit_code == 0, result.output
    decomposition, n = parse_decomposition(out.read_text())
    assert n == 6
    assert decomposition.max_bag <= 3

    result = runner.invoke(cli_router, ["verify", "td", graph, str(out), "--max-bag", "3"])
    assert result.exit_code == 0
    assert "valid" in result.output


def test_verify_rejects_a_tampered_bag(files):
    graph = files("k3.txt", "3 3\n0 1\n1 2\n0 2\n")
    td = files("k3.td", "s td 1 2 3\nb 1 1 2\n")
    result = runner.invoke(cli_router, ["verify", "td", graph, td])
    assert result.exit_code == 1
    assert "invalid: vertex-coverage" in result.output


def test_verify_rejects_a_tampered_model(files):
    graph = files("p3.txt", PATH3)
    model = files("bad.minor.json", '{"pattern": {"n": 2, "edges": [[0, 1]]}, "branch": {"0": [0], "1": [2]}}')
    result = runner.invoke(cli_router, ["verify", "minor", graph, model])
    assert result.exit_code == 1
    assert "missing-edge" in result.output


def test_parse_errors_exit_with_two(files):
    graph = files("loop.txt", "2 1\n0 0\n")
    result = runner.invoke(cli_router, ["decompose", "--pattern", "wheel", graph])
    assert result.exit_code == 2
    assert "line 2: loop" in result.output


def test_apex_forest_needs_a_forest(files):
    graph = files("k4.txt", K4)
    result = runner.invoke(cli_router, ["decompose", "--pattern", "apex-forest", graph])
    assert result.exit_code == 2


def test_unknown_flag_is_a_usage_error(files):
    graph = files("k4.txt", K4)
    result = runner.invoke(cli_router, ["decompose", "--pattern", "wheel", "--bogus", graph])
    assert result.exit_code == 2


def test_graph6_input(files):
    graph = files("k3.g6", "Bw\n")
    result = runner.invoke(cli_router, ["oracle", "treewidth", "--format", "graph6", graph])
    assert result.exit_code == 0
    assert "treewidth 2" in result.output


@pytest.mark.parametrize("method", ["dp", "bb"])
def test_oracle_treewidth(files, method):
    k4, c6 = files("k4.txt", K4), files("c6.txt", C6)
    result = runner.invoke(cli_router, ["oracle", "treewidth", "--method", method, k4, c6])
    assert result.exit_code == 0
    assert f"{k4}: treewidth 3" in result.output
    assert f"{c6}: treewidth 2" in result.output


def test_oracle_minor(files, tmp_path):
    k4 = files("k4.txt", K4)
    triangle = files("k3.txt", "3 3\n0 1\n1 2\n0 2\n")
    out = tmp_path / "model.json"
    result = runner.invoke(cli_router, ["oracle", "minor", k4, triangle, "--out", str(out)])
    assert result.exit_code == 0
    assert "present" in result.output
    assert parse_minor_model(out.read_text()).pattern.num_vertices == 3

    result = runner.invoke(cli_router, ["oracle", "minor", triangle, k4])
    assert "absent" in result.output


def test_oracle_refuses_large_graphs(files, tmp_path):
    config = tmp_path / "limits.env"
    config.write_text("TREEWIDTH_LIMIT=3\n")
    graph = files("k4.txt", K4)
    result = runner.invoke(cli_router, ["--config", str(config), "oracle", "treewidth", graph])
    assert result.exit_code == 2
    assert "exceeds limit 3" in result.output


def test_fuzz_exhaustive_reports_every_class(tmp_path):
    out = tmp_path / "reports.jsonl"
    result = runner.invoke(
        cli_router,
        ["fuzz", "--mode", "exhaustive", "--n", "6", "--pattern", "wheel", "-k", "3", "--out", str(out), "--quiet"],
    )
    assert result.exit_code == 0, result.output
    assert "112 instances, 0 failed" in result.output
    reports = [json.loads(line) for line in out.read_text().splitlines()]
    assert len(reports) == 112
    ids = [r["instance_id"] for r in reports]
    assert ids == sorted(ids)
    assert all(r["elapsed_ms"] is None for r in reports)


def test_fuzz_gnp_is_reproducible(files, tmp_path):
    forest = files("tree.txt", PATH3)
    outputs = []
    for name in ("a.jsonl", "b.jsonl"):
        out = tmp_path / name
        args = [
            "fuzz", "--mode", "gnp", "--n", "10", "--p", "0.3", "--seeds", "3",
            "--pattern", "apex-forest", "--forest", forest, "--out", str(out), "--quiet",
        ]
        result = runner.invoke(cli_router, args)
        assert result.exit_code == 0, result.output
        outputs.append(out.read_text())
    assert outputs[0] == outputs[1]
    assert len(outputs[0].splitlines()) == 3


def test_fuzz_writes_certificates(tmp_path):
    certs = tmp_path / "certs"
    args = ["fuzz", "--n", "4", "--pattern", "wheel", "-k", "3", "--cert-dir", str(certs), "--quiet"]
    result = runner.invoke(cli_router, args)
    assert result.exit_code == 0, result.output
    written = sorted(p.name for p in certs.iterdir())
    assert len(written) == 6
    assert "conn-n4-00000.td" in written


def test_run_cli_returns_exit_codes(files):
    graph = files("k4.txt", K4)
    assert run_cli(["oracle", "treewidth", graph]) == 0
    assert run_cli(["decompose", "--pattern", "wheel", "--bogus", graph]) == 2
    assert run_cli(["verify", "td", graph, files("bad.td", "s td 1 1 4\nb 1 1\n")]) == 1
