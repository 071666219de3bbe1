"""Tests for JsonReporter and the report renderings."""

import json

import pytest

from src.algebra import ExactMatrix
from src.models import CheckResult, Report, ResultStatus
from src.reporters import JsonReporter, RenderError, render


def _report(*checks, summary=None):
    return Report(command="eval", argv=["eval"], version="0.1.0", checks=list(checks), summary=summary or {})


class TestJsonReporter:
    """Tests for the file-writing reporter."""

    def test_writes_file(self, tmp_path):
        """The structured report lands at output_path, creating directories."""
        path = tmp_path / "out" / "report.json"
        report = _report(CheckResult("a", "first", ResultStatus.PASS))
        JsonReporter(str(path)).on_run_complete(report)
        assert json.loads(path.read_text()) == report.to_dict()

    def test_no_path(self, tmp_path):
        """Without a path nothing is written and the dictionary is returned."""
        report = _report()
        assert JsonReporter().on_run_complete(report) == report.to_dict()
        assert list(tmp_path.iterdir()) == []


class TestRender:
    """Tests for render."""

    def test_empty_text(self):
        """An empty report renders the header and '0 checks'."""
        lines = render(_report()).splitlines()
        assert lines[0] == "eval (nonorientable-reps 0.1.0)"
        assert lines[-1].startswith("0 checks")
        assert len(lines) == 2

    def test_passing_line(self):
        """A passing check renders as status, id, separator and description."""
        text = render(_report(CheckResult("R2[1]", "d1 d2 d1 = d2 d1 d2", ResultStatus.PASS)))
        assert "PASS R2[1] \u2014 d1 d2 d1 = d2 d1 d2" in text.splitlines()

    def test_failing_witness_round_trips(self):
        """A failing check carries its witness matrix in interchange form."""
        witness = ExactMatrix.from_rows([[1, 2], [0, 1]])
        check = CheckResult("a", "broken", ResultStatus.FAIL, detail="det", witness=witness.to_dict())
        line = next(x for x in render(_report(check)).splitlines() if x.strip().startswith("witness:"))
        payload = json.loads(line.split("witness:", 1)[1])
        assert ExactMatrix.from_dict(payload) == witness

    def test_checks_sorted(self):
        """Text lines follow the check ids."""
        text = render(_report(CheckResult("b", "second", ResultStatus.PASS), CheckResult("a", "first", ResultStatus.PASS)))
        lines = [x for x in text.splitlines() if x.startswith("PASS")]
        assert lines == ["PASS a \u2014 first", "PASS b \u2014 second"]

    def test_summary_lines(self):
        """Summary entries render as sorted key: value lines."""
        text = render(_report(summary={"order": "inf", "image": "xy"}))
        assert text.splitlines()[1:3] == ['image: "xy"', 'order: "inf"']

    def test_json_is_stable(self):
        """Structured output is identical for identical reports and has sorted keys."""
        a = render(_report(CheckResult("a", "first", ResultStatus.SKIP)), "json")
        b = render(_report(CheckResult("a", "first", ResultStatus.SKIP)), "json")
        assert a == b
        payload = json.loads(a)
        assert list(payload) == sorted(payload)
        assert payload["counts"] == {"fail": 0, "pass": 0, "skip": 1}

    def test_unknown_format(self):
        """Unknown formats raise RenderError."""
        with pytest.raises(RenderError):
            render(_report(), "yaml")
