"""CLI verbs and the exit-code contract."""

import csv
import io
import json

import numpy as np
import pytest
from click.testing import CliRunner

from blockrange import gen, schemas
from blockrange.cli import main


@pytest.fixture()
def runner():
    return CliRunner()


@pytest.fixture(scope="module")
def alpha4_file(tmp_path_factory):
    path = tmp_path_factory.mktemp("cli") / "alpha4.json"
    path.write_text(json.dumps(schemas.block_to_json(gen.alpha_example(4.0))))
    return str(path)


@pytest.fixture(scope="module")
def bad_psd_file(tmp_path_factory):
    path = tmp_path_factory.mktemp("cli") / "bad.json"
    bad = {
        "n": 1,
        "A": [[[1.0, 0.0]]],
        "X": [[[5.0, 0.0]]],
        "B": [[[1.0, 0.0]]],
    }
    path.write_text(json.dumps(bad))
    return str(path)


class TestRange:
    def test_identity_json(self, runner, tmp_path):
        path = tmp_path / "x.json"
        path.write_text(json.dumps({"X": schemas.encode_matrix(np.eye(2))}))
        result = runner.invoke(main, ["range", str(path)])
        assert result.exit_code == 0
        body = json.loads(result.output)
        assert abs(body["summary"]["d_lower"] - 1.0) < 1e-9
        assert abs(body["summary"]["d_upper"] - 1.0) < 1e-9

    def test_jordan_disk_summary(self, runner, tmp_path):
        X = [[0.0, 1.0], [0.0, 0.0]]
        path = tmp_path / "j.json"
        path.write_text(json.dumps({"X": schemas.encode_matrix(X)}))
        result = runner.invoke(main, ["range", str(path)])
        assert result.exit_code == 0
        s = json.loads(result.output)["summary"]
        assert s["d_lower"] == 0.0
        assert abs(s["radius_upper"] - 0.5) < 1e-3
        assert abs(s["diam_upper"] - 1.0) < 1e-3

    def test_boundary_csv(self, runner, tmp_path):
        path = tmp_path / "x.json"
        path.write_text(json.dumps({"X": schemas.encode_matrix(np.eye(2))}))
        result = runner.invoke(
            main, ["range", str(path), "--boundary", "--format", "csv", "--m", "16"]
        )
        assert result.exit_code == 0
        rows = list(csv.reader(io.StringIO(result.output)))
        assert rows[0] == ["theta", "re", "im"]
        assert len(rows) == 17

    def test_malformed_json_exits_2(self, runner, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("this is not json")
        result = runner.invoke(main, ["range", str(path)])
        assert result.exit_code == 2

    def test_bad_matrix_field_exits_2(self, runner, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"X": [[1.0, 2.0]]}))
        result = runner.invoke(main, ["range", str(path)])
        assert result.exit_code == 2
        assert "X" in result.output or "X" in (result.stderr or "")


class TestVerify:
    def test_alpha_exits_0(self, runner, alpha4_file):
        result = runner.invoke(main, ["verify", alpha4_file])
        assert result.exit_code == 0
        body = json.loads(result.output)
        assert body["all_hold"] is True

    def test_non_psd_exits_4(self, runner, bad_psd_file):
        result = runner.invoke(main, ["verify", bad_psd_file])
        assert result.exit_code == 4

    def test_zero_x_instance(self, runner, tmp_path):
        rng = np.random.default_rng(0)
        G = rng.standard_normal((2, 2))
        A = G.T @ G
        blk = {
            "n": 2,
            "A": schemas.encode_matrix(A),
            "X": schemas.encode_matrix(np.zeros((2, 2))),
            "B": schemas.encode_matrix(A),
        }
        path = tmp_path / "zerox.json"
        path.write_text(json.dumps(blk))
        result = runner.invoke(main, ["verify", str(path)])
        assert result.exit_code == 0
        reports = json.loads(result.output)["reports"]
        trace = [r for r in reports if r["claim"] == "proof-trace"][0]
        assert trace["details"]["branch"] == "d=0"

    def test_csv_format(self, runner, alpha4_file):
        result = runner.invoke(main, ["verify", alpha4_file, "--format", "csv"])
        assert result.exit_code == 0
        rows = list(csv.reader(io.StringIO(result.output)))
        assert rows[0] == ["claim", "slack", "verdict", "notes"]
        assert all(row[2] == "holds" for row in rows[1:])

    def test_stdin_input(self, runner, alpha4_file):
        data = open(alpha4_file).read()
        result = runner.invoke(main, ["verify", "-"], input=data)
        assert result.exit_code == 0


class TestTrace:
    def test_alpha_trace(self, runner, alpha4_file):
        result = runner.invoke(main, ["trace", alpha4_file])
        assert result.exit_code == 0
        rep = json.loads(result.output)["report"]
        assert rep["verdict"] == "holds"
        assert rep["details"]["branch"] == "d>0"


class TestSweep:
    def test_small_sweep_exits_0(self, runner):
        result = runner.invoke(
            main,
            ["sweep", "--family", "hermitian-offdiag", "--n", "2", "--count", "3"],
        )
        assert result.exit_code == 0
        body = json.loads(result.output)
        assert body["all_hold"] is True
        assert body["config"]["count"] == 3

    def test_count_zero_exits_2(self, runner):
        result = runner.invoke(
            main, ["sweep", "--family", "random-full-rank", "--count", "0"]
        )
        assert result.exit_code == 2

    def test_unknown_family_exits_2(self, runner):
        result = runner.invoke(main, ["sweep", "--family", "bogus", "--count", "2"])
        assert result.exit_code == 2

    def test_csv_aggregate(self, runner):
        result = runner.invoke(
            main,
            ["sweep", "--family", "segment-offdiag", "--n", "2", "--count", "2",
             "--format", "csv"],
        )
        assert result.exit_code == 0
        rows = list(csv.reader(io.StringIO(result.output)))
        assert rows[0] == ["claim", "min_slack"]


class TestDemoAlpha:
    def test_table(self, runner):
        result = runner.invoke(
            main,
            ["demo-alpha", "--alpha", "2", "--alpha", "4", "--alpha", "10",
             "--format", "csv"],
        )
        assert result.exit_code == 0
        rows = list(csv.reader(io.StringIO(result.output)))
        assert rows[0][0] == "alpha"
        diffs = [float(r[3]) for r in rows[1:]]
        assert np.allclose(diffs, [1.0, 0.5, 0.2], atol=1e-9)

    def test_bad_alpha_exits_2(self, runner):
        result = runner.invoke(main, ["demo-alpha", "--alpha", "0.5"])
        assert result.exit_code == 2


class TestOutputFile:
    def test_out_flag_writes_file(self, runner, alpha4_file, tmp_path):
        out = tmp_path / "report.json"
        result = runner.invoke(main, ["verify", alpha4_file, "--out", str(out)])
        assert result.exit_code == 0
        body = json.loads(out.read_text())
        assert body["all_hold"] is True
