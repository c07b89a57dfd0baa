"""
CLI：退出码、stdout 数据格式与确定性
"""
import json
import os

import pytest
from typer.testing import CliRunner

from analysis.sweep import iter_sweep, sweep_summary
from main import app

runner = CliRunner()


def run(*args: str):
    return runner.invoke(app, list(args))


class TestHRange:
    def test_small_basis(self):
        result = run("hrange", "--basis", "1,2,3", "--h", "2")
        assert result.exit_code == 0
        lines = result.stdout.splitlines()
        assert lines[0] == "basis={1,2,3}"
        assert "X=6" in lines
        assert "h0=1" in lines
        assert "admissible=yes" in lines

    def test_defaults_to_h0(self):
        result = run("hrange", "--basis", "1,38,97", "--window", "1")
        assert result.exit_code == 0
        assert "h=38" in result.stdout.splitlines()

    def test_json_stats(self):
        result = run("hrange", "--basis", "1,38,97", "--window", "1", "--stats", "--json")
        payload = json.loads(result.stdout)
        assert payload["h0"] == 38
        assert payload["stats"]["X"]["39"] == payload["stats"]["X"]["38"] + 97

    @pytest.mark.parametrize("basis", ["1,5,5", "2,3,4", "1,x,3"])
    def test_bad_basis(self, basis):
        assert run("hrange", "--basis", basis).exit_code == 2

    def test_bad_h(self):
        assert run("hrange", "--basis", "1,2,3", "--h", "0").exit_code == 2


class TestStrides:
    def test_named_series(self):
        result = run("strides", "--basis", "1,38,97")
        assert result.exit_code == 0
        lines = result.stdout.splitlines()
        assert len(lines) == 3
        assert lines[0].startswith("n=19 p=2 noncanonical q=")
        assert lines[2].startswith("n=14 p=6 canonical q=- breaks=")

    def test_json(self):
        payload = json.loads(run("strides", "--basis", "1,38,97", "--json").stdout)
        assert [(sg["n"], sg["p"]) for sg in payload] == [(19, 2), (15, 4), (14, 6)]


class TestDiagram:
    def test_text(self):
        result = run("diagram", "--basis", "1,2,3", "--n", "1", "--max-order", "0")
        assert result.exit_code == 0
        lines = result.stdout.splitlines()
        assert lines[0] == "i=0 |###"
        assert len(lines) == 2

    def test_thread_list(self):
        result = run("diagram", "--basis", "1,2,3", "--n", "1", "--max-order", "0", "--list")
        lines = result.stdout.splitlines()
        assert lines[-2:] == ["T(0,0) str=0 end=1 len=2", "T(1,0) str=2 end=2 len=1"]

    def test_deterministic(self):
        args = ("diagram", "--basis", "1,38,97", "--n", "19")
        assert run(*args).stdout == run(*args).stdout

    def test_svg(self):
        result = run("diagram", "--basis", "1,8,11", "--n", "3", "--format", "svg")
        assert result.exit_code == 0
        assert result.stdout.startswith("<svg")
        assert result.stdout.endswith("</svg>\n")

    @pytest.mark.parametrize(
        "extra",
        [("--n", "0"), ("--n", "3", "--format", "png"), ("--n", "3", "--max-order", "-1")],
    )
    def test_usage_errors(self, extra):
        assert run("diagram", "--basis", "1,8,11", *extra).exit_code == 2


class TestSweep:
    def test_nothing_below_five(self):
        result = run("sweep", "--a2-max", "4")
        assert result.exit_code == 0
        assert result.stdout == ""

    def test_jsonl_stdout(self):
        result = run("sweep", "--a2-max", "8")
        assert result.exit_code == 0
        rows = [json.loads(line) for line in result.stdout.splitlines()]
        assert {"a2": 8, "a3": 11, "c2": 1, "c1": 3, "n": 3, "p": 2, "q": 4, "y": 4} in rows

    def test_csv_header(self):
        lines = run("sweep", "--a2-max", "8", "--csv").stdout.splitlines()
        assert lines[0] == "a2,a3,c2,c1,n,p,q,y"
        assert "8,11,1,3,3,2,4,4" in lines

    def test_out_file_matches_stdout(self, tmp_path):
        target = tmp_path / "records.jsonl"
        result = run("sweep", "--a2-max", "9", "--out", str(target))
        assert result.exit_code == 0
        assert result.stdout == ""
        assert target.read_text() == run("sweep", "--a2-max", "9").stdout
        assert os.listdir(tmp_path) == ["records.jsonl"]

    def test_jobs_do_not_change_output(self):
        assert run("sweep", "--a2-max", "10", "--jobs", "1").stdout == run("sweep", "--a2-max", "10", "--jobs", "2").stdout

    def test_summary_reports_max_c2(self):
        expected = sweep_summary(iter_sweep(12)).top_c2
        result = run("sweep", "--a2-max", "12")
        assert expected is not None
        assert f"最大 C2: {expected}" in result.stderr

    @pytest.mark.parametrize("args", [("--a2-max", "1"), ("--a2-max", "8", "--jobs", "0")])
    def test_usage_errors(self, args):
        assert run("sweep", *args).exit_code == 2


class TestVerify:
    def test_small_run(self):
        result = run(
            "verify", "--a2-max", "7", "--h-window", "1",
            "--family", "3t+2", "--family-t-max", "3", "--no-examples",
        )
        assert result.exit_code == 0, result.stdout
        lines = result.stdout.splitlines()
        assert any(line.startswith("PASS L1 cases=") for line in lines)
        assert any(line.startswith("PASS T3 cases=") for line in lines)
        assert "PASS family 3t+2 cases=2" in lines
        assert any(line.startswith("FLAG family 3t+2 t=1 basis=(1, 5, 8)") for line in lines)

    def test_filter_rows(self):
        result = run(
            "verify", "--a2-max", "14", "--hrange-a2-max", "0", "--family-t-max", "1",
            "--family", "3t+2", "--no-examples", "--filter", "c2=2,c1<a2/2,p=2",
        )
        assert result.exit_code == 0
        assert "filter c2=2,c1<a2/2,p=2:" in result.stdout
        assert "a2=14 a3=33 c2=2 c1=5 n=8 p=2 q=4 y=22" in result.stdout

    def test_json(self):
        result = run("verify", "--a2-max", "5", "--family-t-max", "2", "--family", "3t+2", "--no-examples", "--json")
        payload = json.loads(result.stdout)
        assert payload["a2_max"] == 5
        assert all(c["passed"] for c in payload["checks"])

    @pytest.mark.parametrize(
        "args",
        [("--family", "nope"), ("--filter", "c9=1"), ("--a2-max", "1"), ("--h-window", "-1")],
    )
    def test_usage_errors(self, args):
        assert run("verify", "--family-t-max", "2", *args).exit_code == 2


class TestClassify:
    def test_descending_d1(self):
        result = run("classify", "--basis", "1,14,33")
        assert result.exit_code == 0
        lines = result.stdout.splitlines()
        assert "class=D1 branch=descending" in lines
        assert "fundamental n=8 p=2 noncanonical q=4" in lines
        assert all(f"eq{i}=ok" in lines for i in range(5))
        assert "qmax<7" in lines

    def test_c2_one_overlay(self):
        result = run("classify", "--basis", "1,30,37")
        assert result.exit_code == 0
        lines = result.stdout.splitlines()
        overlay = [line for line in lines if line.startswith("S")]
        assert overlay[0].endswith("ord=4 str=2 len=7")
        assert any(line.startswith("witness case=descending:odd-even m=4") for line in lines)


class TestExtremal:
    def test_h2(self):
        result = run("extremal", "--h", "2", "--a2-max", "10")
        assert result.exit_code == 0
        assert result.stdout.strip() == "basis={1,3,4} X=8"

    def test_precondition(self):
        assert run("extremal", "--h", "1", "--a2-max", "10").exit_code == 2
