"""Tests for CLI entry point.

Tests argument parsing, error mapping and exit codes; the heavy suites are
exercised through small genera.
"""

import json
import logging

import pytest

from src.checks import Check, CheckOutcome, Suite, UsageError
from src.cli import CompositeReporter, create_reporters, error_kind, main, parse_args, setting_overrides, setup_logging
from src.config import ConfigError
from src.presentation import PresentationError
from src.reporters import ConsoleReporter, JsonReporter


class TestParseArgs:
    """Tests for argument parsing."""

    def test_command_and_defaults(self):
        """Only the command is required; overrides default to None."""
        args = parse_args(["eval"])
        assert args.command == "eval"
        assert args.scenario is None
        assert args.quiet is False
        assert args.verbose == 0
        assert all(v is None for v in setting_overrides(args).values())

    def test_scenario_positional(self):
        """The scenario id is positional."""
        args = parse_args(["scenario", "symmetric-eight", "--rank", "4"])
        assert args.scenario == "symmetric-eight"
        assert args.rank == 4

    def test_overrides(self):
        """Setting flags map onto Settings fields."""
        args = parse_args(["epsilon", "--format", "json", "--branch-limit", "8", "--seed", "3",
                           "--samples", "7", "--n4-reading", "literal"])
        assert setting_overrides(args) == {
            "output_format": "json",
            "branch_limit": 8,
            "random_seed": 3,
            "sample_words": 7,
            "n4_reading": "literal",
        }

    def test_verbosity_counts(self):
        """-vv counts twice."""
        assert parse_args(["eval", "-vv"]).verbose == 2

    def test_unknown_command_exits_2(self):
        """argparse rejects unknown commands with exit status 2."""
        with pytest.raises(SystemExit) as exc:
            parse_args(["solve"])
        assert exc.value.code == 2

    def test_bad_rep_exits_2(self):
        """--rep is limited to the known names."""
        with pytest.raises(SystemExit):
            parse_args(["eval", "--rep", "rho"])


class TestHelpers:
    """Tests for reporter creation, logging and error labels."""

    def test_console_only(self):
        """Without --out only the console reporter is used."""
        reporters = create_reporters(parse_args(["eval"]))
        assert len(reporters) == 1
        assert isinstance(reporters[0], ConsoleReporter)

    def test_with_out(self):
        """--out adds a JSON reporter."""
        reporters = create_reporters(parse_args(["eval", "--out", "r.json"]))
        assert isinstance(reporters[1], JsonReporter)
        assert reporters[1].output_path == "r.json"

    def test_composite_delegates(self, mocker):
        """CompositeReporter forwards every hook."""
        first, second = mocker.Mock(), mocker.Mock()
        composite = CompositeReporter([first, second])
        composite.on_check_start("a")
        composite.on_run_complete("report")
        first.on_check_start.assert_called_once_with("a")
        second.on_run_complete.assert_called_once_with("report")

    @pytest.mark.parametrize("verbosity, level", [(0, logging.WARNING), (1, logging.INFO), (2, logging.DEBUG), (5, logging.DEBUG)])
    def test_setup_logging(self, verbosity, level):
        """Verbosity picks the root level."""
        setup_logging(verbosity)
        assert logging.getLogger().level == level

    def test_error_kinds(self):
        """Library errors map onto readable labels."""
        assert error_kind(ConfigError("x")) == "Configuration"
        assert error_kind(PresentationError("x")) == "Word"
        assert error_kind(UsageError("x")) == "Usage"
        assert error_kind(RuntimeError("x")) == "Internal"


class TestMain:
    """Tests for main exit codes and output."""

    @pytest.fixture(autouse=True)
    def _isolated(self, tmp_path, monkeypatch):
        monkeypatch.chdir(tmp_path)
        for name in ("NONOR_BRANCH_LIMIT", "NONOR_FORMAT", "NONOR_SEED", "NONOR_SAMPLE_WORDS", "NONOR_N4_READING"):
            monkeypatch.delenv(name, raising=False)

    def test_abelianize(self, capsys):
        """abelianize --genus 7 --word d1 prints class 0 and exits 0."""
        assert main(["abelianize", "--genus", "7", "--word", "d1", "-q"]) == 0
        out = capsys.readouterr().out
        assert out.startswith("abelianize (nonorientable-reps ")
        assert 'class: "0"' in out

    def test_json_format(self, capsys):
        """--format json writes the structured report on stdout."""
        assert main(["dihedral", "--word", "e2", "--format", "json", "-q"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["command"] == "dihedral"
        assert payload["argv"] == ["dihedral", "--word", "e2", "--format", "json", "-q"]
        assert payload["summary"]["order"] == "inf"
        assert payload["passed"] is True

    def test_out_file(self, tmp_path, capsys):
        """--out writes the JSON report next to the stdout rendering."""
        target = tmp_path / "reports" / "eval.json"
        assert main(["eval", "--genus", "5", "--word", "u4", "--out", str(target), "-q"]) == 0
        assert json.loads(target.read_text())["summary"]["word"] == "u4"
        assert capsys.readouterr().out.startswith("eval ")

    def test_missing_option_exits_2(self, capsys):
        """A missing --word is a usage error with exit status 2."""
        assert main(["eval", "--genus", "5"]) == 2
        assert capsys.readouterr().err.startswith("Usage error: eval needs --word")

    def test_malformed_word_exits_2(self, capsys):
        """A malformed word is reported as a word error."""
        assert main(["eval", "--genus", "5", "--word", "d1 x9"]) == 2
        assert "Word error" in capsys.readouterr().err

    def test_stray_positional(self, capsys):
        """Only the scenario command takes a positional argument."""
        assert main(["eval", "rank-two", "--genus", "5", "--word", "d1"]) == 2

    def test_unknown_scenario(self, capsys):
        """Unknown scenario ids are scenario errors."""
        assert main(["scenario", "rank-nine"]) == 2
        assert "Scenario error" in capsys.readouterr().err

    def test_bad_config(self, tmp_path, capsys):
        """An invalid config file is a configuration error."""
        bad = tmp_path / "bad.json"
        bad.write_text("{")
        assert main(["eval", "-c", str(bad)]) == 2
        assert capsys.readouterr().err.startswith("Configuration error:")

    def test_bad_override(self, capsys):
        """An out-of-range flag value is a configuration error."""
        assert main(["eval", "--branch-limit", "0"]) == 2
        assert "branch_limit" in capsys.readouterr().err

    def test_failing_check_exits_1(self, mocker, capsys):
        """A failing check gives exit status 1 and the witness in the text output."""
        suite = Suite([Check("broken", "always fails", lambda: CheckOutcome.of(False, "no", {"ring": "Z"}))])
        mocker.patch("src.cli.build_suite", return_value=suite)
        assert main(["eval", "-q"]) == 1
        out = capsys.readouterr().out
        assert "FAIL broken \u2014 always fails" in out
        assert 'witness: {"ring": "Z"}' in out

    def test_deterministic_json(self, capsys):
        """Identical invocations give identical structured output."""
        argv = ["verify-relations", "--genus", "5", "--rep", "psi2", "--format", "json", "-q"]
        main(argv)
        first = capsys.readouterr().out
        main(argv)
        assert capsys.readouterr().out == first
