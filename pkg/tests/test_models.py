"""Tests for report data models."""

from src.models import CheckResult, Report, ResultStatus


def _result(check_id, status=ResultStatus.PASS, **kwargs):
    return CheckResult(check_id=check_id, description=f"check {check_id}", status=status, **kwargs)


class TestResultStatus:
    """Tests for ResultStatus enum."""

    def test_values(self):
        """Statuses serialize as lower-case words."""
        assert [s.value for s in ResultStatus] == ["pass", "fail", "skip"]


class TestCheckResult:
    """Tests for CheckResult."""

    def test_minimal_dict(self):
        """Empty detail and missing witness are left out."""
        assert _result("R1[1]").to_dict() == {"id": "R1[1]", "description": "check R1[1]", "status": "pass"}

    def test_witness_and_detail(self):
        """Detail and witness are carried when present."""
        payload = _result("x", ResultStatus.FAIL, detail="det = 2", witness={"ring": "Z"}).to_dict()
        assert payload["detail"] == "det = 2"
        assert payload["witness"] == {"ring": "Z"}

    def test_duration_not_serialized(self):
        """Timings stay out of the dictionary."""
        assert "duration_seconds" not in _result("x", duration_seconds=1.5).to_dict()


class TestReport:
    """Tests for Report."""

    def test_empty_report_passes(self):
        """A report without checks has nothing failing."""
        report = Report(command="eval")
        assert report.all_passed
        assert report.counts() == {"pass": 0, "fail": 0, "skip": 0}

    def test_skip_does_not_fail(self):
        """Skipped checks keep the report passing."""
        report = Report(command="eval", checks=[_result("a"), _result("b", ResultStatus.SKIP)])
        assert report.all_passed

    def test_failure(self):
        """One failure fails the report."""
        report = Report(command="eval", checks=[_result("a"), _result("b", ResultStatus.FAIL)])
        assert not report.all_passed
        assert report.counts()["fail"] == 1

    def test_checks_sorted_by_id(self):
        """to_dict lists checks in id order."""
        report = Report(command="eval", checks=[_result("b"), _result("a"), _result("c")])
        assert [c["id"] for c in report.to_dict()["checks"]] == ["a", "b", "c"]

    def test_to_dict(self):
        """The dictionary echoes the invocation and leaves out timings."""
        report = Report(command="dihedral", argv=["dihedral", "--word", "e2"], version="0.1.0",
                        summary={"order": "inf"}, duration_seconds=3.0)
        payload = report.to_dict()
        assert payload["argv"] == ["dihedral", "--word", "e2"]
        assert payload["passed"] is True
        assert payload["summary"] == {"order": "inf"}
        assert "duration_seconds" not in payload

    def test_no_summary_key_when_empty(self):
        """An empty summary is left out."""
        assert "summary" not in Report(command="eval").to_dict()
