"""Tests for the dtors command-line surface (commands/cli.py)."""
import json

import pytest

from commands.cli import EXIT_CHECK_FAILED, EXIT_MATH, EXIT_OK, EXIT_USAGE, build_parser, main


def _stdout_json(capsys):
    return json.loads(capsys.readouterr().out)


class TestParser:

    def test_subcommands(self):
        args = build_parser().parse_args(["order", "--ell", "2", "--tau", "[0,1]", "--lambda", "[0]", "--point", "[1]"])
        assert args.command == "order"
        assert args.lam == "[0]"
        assert args.p == 2 and args.e == 1

    def test_verify_without_value(self):
        args = build_parser().parse_args(["certificate", "--system", "x", "--verify"])
        assert args.verify == 0

    def test_ell_max_is_an_alias_of_verify(self):
        args = build_parser().parse_args(["certificate", "--system", "x", "--ell-max", "3"])
        assert args.verify == 3

    def test_missing_required_option_exits_with_usage_code(self):
        with pytest.raises(SystemExit) as exc_info:
            main(["order", "--ell", "2"])
        assert exc_info.value.code == EXIT_USAGE

    def test_unknown_command(self):
        with pytest.raises(SystemExit) as exc_info:
            main(["factor"])
        assert exc_info.value.code == EXIT_USAGE

    def test_certificate_sources_are_exclusive(self):
        with pytest.raises(SystemExit) as exc_info:
            main(["certificate", "--system", "x", "--from-drinfeld"])
        assert exc_info.value.code == EXIT_USAGE


class TestOrderCommand:

    def test_order_of_one(self, capsys):
        code = main(["order", "--ell", "2", "--tau", "[0,1]", "--lambda", "[0,0]", "--point", "[1,0]"])
        assert code == EXIT_OK
        result = _stdout_json(capsys)
        assert result["order"] == [1, 1, 1]
        assert result["degree"] == 2
        assert result["order_text"] == "T^2 + T + 1"

    def test_kernel_point(self, capsys):
        code = main(["order", "--ell", "2", "--tau", "[0,1]", "--lambda", "[0,1]", "--point", "[0,1]"])
        assert code == EXIT_OK
        assert _stdout_json(capsys)["order"] == [0, 1]

    def test_parse_error(self, capsys):
        code = main(["order", "--ell", "2", "--tau", "[0,", "--lambda", "[0]", "--point", "[1]"])
        assert code == EXIT_USAGE
        error = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
        assert error["kind"] == "ParseError"

    def test_invalid_field_is_a_math_error(self):
        code = main(["order", "--p", "4", "--ell", "2", "--tau", "[0,1]", "--lambda", "[0]", "--point", "[1]"])
        assert code == EXIT_MATH

    def test_rank_below_two(self):
        code = main(["order", "--r", "1", "--ell", "2", "--tau", "[0,1]", "--lambda", "[0]", "--point", "[1]"])
        assert code == EXIT_MATH


class TestSweepCommand:

    def test_json_lines_with_summary(self, capsys):
        code = main(["sweep", "--a", "1", "--b", "t", "--ell", "2", "--M", "1-2"])
        assert code == EXIT_OK
        lines = capsys.readouterr().out.strip().splitlines()
        records = [json.loads(line) for line in lines[:-1]]
        summary = json.loads(lines[-1])["summary"]
        assert len(records) == 2 * 4
        assert {tuple(rec["tau"]) for rec in records} == {(0, 1), (1, 1)}
        assert [(row["ell"], row["M"]) for row in summary["rows"]] == [(2, 1), (2, 2)]
        assert summary["rows"][1]["max_exceptional"] == 4

    def test_csv_output_files(self, tmp_path):
        out = tmp_path / "sweep.csv"
        code = main(["sweep", "--a", "1", "--b", "t", "--ell", "2-3", "--format", "csv", "--out", str(out)])
        assert code == EXIT_OK
        header = out.read_text().splitlines()[0]
        assert "both_le_M1" in header
        assert "timing_ms" not in header
        summary = (tmp_path / "sweep.summary.csv").read_text().splitlines()
        assert len(summary) == 1 + 2

    def test_cross_check(self, capsys):
        code = main(["sweep", "--a", "1", "--b", "t", "--ell", "2", "--cross-check"])
        assert code == EXIT_OK
        lines = capsys.readouterr().out.strip().splitlines()
        assert all(json.loads(line)["cross_check_ok"] for line in lines[:-1])

    def test_dependent_points(self, capsys):
        code = main(["sweep", "--a", "t", "--b", "t", "--ell", "2"])
        assert code == EXIT_MATH
        error = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
        assert error["kind"] == "LinearDependenceError"

    def test_bad_tau_selection(self):
        assert main(["sweep", "--a", "1", "--b", "t", "--ell", "2", "--tau", "some"]) == EXIT_USAGE

    def test_bad_range(self):
        assert main(["sweep", "--a", "1", "--b", "t", "--ell", "3-2"]) == EXIT_USAGE


class TestCertificateCommand:

    def test_linear_pair_with_verification(self, capsys):
        code = main(["certificate", "--system", "x; x+t", "--verify", "2"])
        assert code == EXIT_OK
        report = _stdout_json(capsys)
        assert report["certificate"]["cert"] == [0, 1]
        assert report["certificate"]["path"] == "resultant"
        assert report["verification"]["per_ell"]["2"] == {"pass": 3, "excluded": 1, "fail": 0}
        assert report["verification"]["failed"] == 0

    def test_verify_defaults_to_configured_bound(self, capsys, monkeypatch):
        monkeypatch.setenv("DTORS_ELL_MAX", "1")
        code = main(["certificate", "--system", "x; x+t", "--verify"])
        assert code == EXIT_OK
        assert _stdout_json(capsys)["verification"]["ell_max"] == 1

    def test_ell_max_flag(self, capsys):
        code = main(["certificate", "--system", "t*x", "--ell-max", "2"])
        assert code == EXIT_OK
        report = _stdout_json(capsys)
        assert report["certificate"]["cert"] == [0, 1]
        assert report["verification"]["ell_max"] == 2
        assert report["verification"]["failed"] == 0

    def test_no_verification_requested(self, capsys):
        assert main(["certificate", "--system", "x-t; x-t"]) == EXIT_OK
        report = _stdout_json(capsys)
        assert "verification" not in report
        assert report["certificate"]["path"] == "unit"

    def test_system_from_file(self, tmp_path, capsys):
        source = tmp_path / "system.json"
        source.write_text('["x", "x+t"]')
        assert main(["certificate", "--input", str(source), "--check-identity"]) == EXIT_OK
        assert _stdout_json(capsys)["certificate"]["identity_checked"] is True

    def test_missing_file(self, tmp_path):
        assert main(["certificate", "--input", str(tmp_path / "absent.txt")]) == EXIT_USAGE

    def test_from_drinfeld(self, capsys):
        code = main(["certificate", "--from-drinfeld", "--a", "1", "--b", "t", "--M", "1", "--verify", "3"])
        assert code == EXIT_OK
        report = _stdout_json(capsys)
        assert len(report["system"]) == 2
        assert report["verification"]["failed"] == 0

    def test_from_drinfeld_needs_points(self):
        assert main(["certificate", "--from-drinfeld", "--a", "1"]) == EXIT_USAGE

    def test_size_cap(self, capsys):
        code = main(["certificate", "--from-drinfeld", "--a", "1", "--b", "t", "--M", "2", "--cap", "10"])
        assert code == EXIT_MATH
        assert "SizeCapExceededError" in capsys.readouterr().err


class TestLemmaAuditCommand:

    def test_small_audit_passes(self, capsys):
        code = main(["lemma-audit", "--r", "2", "--a", "t", "--a", "1", "--n-max", "1", "--M", "1"])
        assert code == EXIT_OK
        report = _stdout_json(capsys)
        assert report["failed"] == 0
        assert report["passed"] > 0

    def test_cap_skips_large_instances(self, capsys):
        code = main(["lemma-audit", "--r", "2", "--a", "t", "--n-max", "2", "--M", "1", "--cap", "4"])
        assert code == EXIT_OK
        report = _stdout_json(capsys)
        assert report["skipped"] > 0
        assert all(row["status"] != "fail" for row in report["rows"])

    def test_csv(self, capsys):
        assert main(["lemma-audit", "--r", "2", "--a", "t", "--n-max", "1", "--M", "1", "--format", "csv"]) == EXIT_OK
        assert capsys.readouterr().out.startswith("check,instance,value,bound,status")


class TestDeterminism:
    """Repeated runs write byte-identical output."""

    def _run(self, capsys, argv):
        assert main(argv) == EXIT_OK
        return capsys.readouterr().out

    @pytest.mark.parametrize("argv", [
        ["sweep", "--a", "1", "--b", "t", "--ell", "2-3", "--M", "1-2"],
        ["sweep", "--a", "1", "--b", "t", "--ell", "2-4", "--tau", "sample:2", "--seed", "3", "--format", "csv"],
        ["certificate", "--system", "x^2+t; x+t^2; x^2+t*x+1", "--verify", "2", "--check-identity"],
        ["lemma-audit", "--r", "2", "--a", "t", "--a", "1", "--n-max", "1", "--M", "1"],
    ])
    def test_repeated_runs(self, capsys, argv):
        assert self._run(capsys, argv) == self._run(capsys, argv)

    def test_worker_count_does_not_change_output(self, capsys, monkeypatch):
        monkeypatch.setenv("DTORS_THREADS", "2")
        argv = ["sweep", "--a", "1", "--b", "t", "--ell", "2-3", "--M", "1"]
        inline = self._run(capsys, argv + ["--threads", "1"])
        pooled = self._run(capsys, argv + ["--threads", "2"])
        assert inline == pooled


class TestEnvironment:

    def test_invalid_setting(self, monkeypatch, capsys):
        monkeypatch.setenv("DTORS_THREADS", "many")
        code = main(["order", "--ell", "2", "--tau", "[0,1]", "--lambda", "[0]", "--point", "[1]"])
        assert code == EXIT_USAGE
        assert "DTORS_THREADS" in capsys.readouterr().err


def test_exit_codes_are_distinct():
    assert len({EXIT_OK, EXIT_USAGE, EXIT_MATH, EXIT_CHECK_FAILED}) == 4
