import json

import pytest

import divgap.cli as cli
from divgap.cli import run_cli
from divgap.decomp import IdentityReport
from divgap.pairs import PairRecord, SearchConfig, scan
from divgap.report import parse_pairs_csv


def run(capsys, *argv):
    code = run_cli(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestScanCommand:
    def test_stdout_csv(self, capsys):
        code, out, _ = run(
            capsys, "scan", "--a-min", "2", "--a-max", "2",
            "--b-max", "12", "--out", "-",
        )
        assert code == 0
        assert out == "a,b,t\n2,8,208\n2,10,505\n2,12,1044\n"

    def test_file_output(self, tmp_path, capsys):
        target = tmp_path / "pairs.csv"
        code, _, _ = run(
            capsys, "scan", "--a-min", "2", "--a-max", "3",
            "--b-max", "20", "--out", str(target),
        )
        assert code == 0
        records = parse_pairs_csv(target.read_text().splitlines())
        assert records == list(scan(SearchConfig(2, 3, 20)))

    def test_naive_strategy_flag(self, capsys):
        code, out, _ = run(
            capsys, "scan", "--a-min", "2", "--a-max", "2", "--b-max", "12",
            "--strategy", "naive", "--out", "-",
        )
        assert code == 0
        assert "2,8,208" in out

    def test_include_trivial_flag(self, capsys):
        code, out, _ = run(
            capsys, "scan", "--a-min", "1", "--a-max", "1", "--b-max", "4",
            "--include-trivial", "--out", "-",
        )
        assert code == 0
        assert out == "a,b,t\n1,2,10\n1,3,45\n1,4,136\n"

    def test_jobs_deterministic(self, tmp_path, capsys):
        files = []
        for jobs in ("1", "5"):
            target = tmp_path / f"pairs-{jobs}.csv"
            code, _, _ = run(
                capsys, "scan", "--a-min", "2", "--a-max", "30",
                "--b-max", "2000", "--jobs", jobs, "--out", str(target),
            )
            assert code == 0
            files.append(target.read_bytes())
        assert files[0] == files[1]

    def test_invalid_range_exits_2(self, capsys):
        code, _, err = run(
            capsys, "scan", "--a-min", "5", "--a-max", "2",
            "--b-max", "100",
        )
        assert code == 2
        assert "error" in err.lower()

    def test_missing_required_exits_2(self, capsys):
        code, _, err = run(capsys, "scan", "--a-min", "2")
        assert code == 2
        assert "b-max" in err


class TestConfigFile:
    def test_config_supplies_options(self, tmp_path, capsys):
        config = tmp_path / "scan.cfg"
        config.write_text(
            "# survey window\n"
            "a-min = 2\n"
            "a_max = 2\n"
            "b-max = 12\n"
            "out = -\n"
        )
        code, out, _ = run(capsys, "scan", "--config", str(config))
        assert code == 0
        assert out.count("\n") == 4

    def test_cli_overrides_config(self, tmp_path, capsys):
        config = tmp_path / "scan.cfg"
        config.write_text("a-min = 2\na-max = 5\nb-max = 12\nout = -\n")
        code, out, _ = run(
            capsys, "scan", "--config", str(config), "--a-max", "2"
        )
        assert code == 0
        assert out == "a,b,t\n2,8,208\n2,10,505\n2,12,1044\n"

    def test_unknown_key_exits_2(self, tmp_path, capsys):
        config = tmp_path / "scan.cfg"
        config.write_text("a-mim = 2\n")
        code, _, err = run(capsys, "scan", "--config", str(config))
        assert code == 2
        assert "a_mim" in err

    def test_bad_value_exits_2(self, tmp_path, capsys):
        config = tmp_path / "scan.cfg"
        config.write_text("a-min = two\n")
        code, _, err = run(capsys, "scan", "--config", str(config))
        assert code == 2

    def test_missing_file_exits_2(self, capsys):
        code, _, err = run(capsys, "scan", "--config", "/nope/none.cfg")
        assert code == 2


class TestDecomposeCommand:
    def test_verified_pair(self, capsys):
        code, out, _ = run(capsys, "decompose", "2", "8")
        assert code == 0
        doc = json.loads(out)
        assert doc["pair"] == {"a": 2, "b": 8, "t": 208}
        assert doc["decomposition"] == {
            "D": 2, "x": 1, "y": 4, "T": 5, "m": 13, "s": 897,
            "lambda": 43056,
        }
        assert doc["all_ok"] is True
        assert all(doc["identities"].values())

    def test_non_divisible_exits_2(self, capsys):
        code, _, err = run(capsys, "decompose", "2", "9")
        assert code == 2
        assert "divide" in err

    def test_bad_order_exits_2(self, capsys):
        code, _, _ = run(capsys, "decompose", "8", "2")
        assert code == 2

    def test_compact_json_flag(self, capsys):
        code, out, _ = run(capsys, "decompose", "2", "8", "--json")
        assert code == 0
        assert out.count("\n") == 1
        doc = json.loads(out)
        assert doc["decomposition"]["s"] == 897

    def test_counterexample_exits_1(self, capsys, monkeypatch):
        broken = IdentityReport(*([True] * 8 + [False]))
        monkeypatch.setattr(cli, "verify_identities", lambda rec: broken)
        code, out, err = run(capsys, "decompose", "2", "8")
        assert code == 1
        assert "COUNTEREXAMPLE" in err
        assert "s_divides_lam" in err


class TestAbcCommand:
    def test_end_to_end(self, tmp_path, capsys):
        pairs_csv = tmp_path / "pairs.csv"
        run(
            capsys, "scan", "--a-min", "2", "--a-max", "3",
            "--b-max", "20", "--out", str(pairs_csv),
        )
        code, out, err = run(
            capsys, "abc", "--in", str(pairs_csv), "--out", "-"
        )
        assert code == 0
        assert err == ""
        lines = out.splitlines()
        assert lines[0] == "a,b,t,d,d1,d2,S,A,B,C,rad,quality,branch"
        assert (
            lines[1] == "2,8,208,13,13,1,5,69,256,325,8970,"
            "0.635470593807,LargeT"
        )
        assert len(lines) == 9

    def test_corrupt_row_exits_1(self, tmp_path, capsys):
        bad = tmp_path / "bad.csv"
        bad.write_text("a,b,t\n2,8,208\n2,9,300\n")
        code, out, err = run(capsys, "abc", "--in", str(bad), "--out", "-")
        assert code == 1
        assert "COUNTEREXAMPLE" in err
        # the valid row is still emitted
        assert "2,8,208" in out

    def test_bad_header_exits_2(self, tmp_path, capsys):
        bad = tmp_path / "bad.csv"
        bad.write_text("x,y,z\n1,2,3\n")
        code, _, err = run(capsys, "abc", "--in", str(bad), "--out", "-")
        assert code == 2

    def test_missing_out_exits_2(self, tmp_path, capsys):
        good = tmp_path / "pairs.csv"
        good.write_text("a,b,t\n2,8,208\n")
        code, _, err = run(capsys, "abc", "--in", str(good))
        assert code == 2
        assert "out" in err
        code, _, err = run(capsys, "report", "--in", str(good))
        assert code == 2


class TestCurveCommand:
    def test_points_csv(self, capsys):
        code, out, _ = run(
            capsys, "curve", "--t", "208", "--s", "897",
            "--x-max", "10", "--out", "-",
        )
        assert code == 0
        assert out == "t,s,X,Y\n208,897,2,65\n"

    def test_invalid_t_exits_2(self, capsys):
        code, _, err = run(
            capsys, "curve", "--t", "0", "--s", "1", "--x-max", "5"
        )
        assert code == 2


class TestReportCommand:
    def test_end_to_end(self, tmp_path, capsys):
        pairs_csv = tmp_path / "pairs.csv"
        run(
            capsys, "scan", "--a-min", "2", "--a-max", "5",
            "--b-max", "500", "--out", str(pairs_csv),
        )
        out_json = tmp_path / "report.json"
        code, _, err = run(
            capsys, "report", "--in", str(pairs_csv),
            "--out", str(out_json), "--epsilon", "0.02",
        )
        assert code == 0
        doc = json.loads(out_json.read_text())
        assert doc["global_min_ratio"] == [5, 18, 3.6]
        assert doc["manifest"]["identity_failures"] == 0
        assert doc["manifest"]["config"]["epsilon"] == 0.02
        assert len(doc["bound_curve_samples"]) == len(doc["buckets"])

    def test_identity_failure_exits_1(self, tmp_path, capsys):
        bad = tmp_path / "bad.csv"
        bad.write_text("a,b,t\n2,8,209\n")
        code, _, err = run(capsys, "report", "--in", str(bad), "--out", "-")
        assert code == 1
        assert "COUNTEREXAMPLE" in err

    def test_bad_epsilon_exits_2(self, tmp_path, capsys):
        good = tmp_path / "pairs.csv"
        good.write_text("a,b,t\n2,8,208\n")
        code, _, _ = run(
            capsys, "report", "--in", str(good), "--out", "-",
            "--epsilon", "9",
        )
        assert code == 2


class TestTopLevel:
    def test_unknown_subcommand_exits_2(self, capsys):
        assert run(capsys, "frobnicate")[0] == 2

    def test_no_subcommand_exits_2(self, capsys):
        assert run(capsys)[0] == 2

    def test_help_exits_0(self, capsys):
        assert run(capsys, "--help")[0] == 0

    def test_version(self, capsys):
        code, out, _ = run(capsys, "--version")
        assert code == 0
        assert out.startswith("divgap ")
