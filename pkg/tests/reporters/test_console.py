"""Tests for ConsoleReporter."""

from io import StringIO

from rich.console import Console

from src.models import CheckResult, Report, ResultStatus
from src.reporters.base import Reporter
from src.reporters.console import ConsoleReporter


def _reporter(quiet=False):
    buffer = StringIO()
    console = Console(file=buffer, width=120, legacy_windows=True, color_system=None)
    return ConsoleReporter(quiet=quiet, console=console), buffer


def _result(check_id, status=ResultStatus.PASS, detail=""):
    return CheckResult(check_id=check_id, description=f"about {check_id}", status=status, detail=detail)


class TestConsoleReporter:
    """Tests for console output."""

    def test_inherits_from_reporter(self):
        """ConsoleReporter implements the Reporter interface."""
        assert isinstance(ConsoleReporter(), Reporter)

    def test_check_line(self):
        """A completed check prints its status, id and description."""
        reporter, buffer = _reporter()
        reporter.on_check_complete(_result("R1[1,3]"))
        assert "[PASS] R1[1,3]: about R1[1,3]" in buffer.getvalue()

    def test_failure_detail(self):
        """Failing checks print their detail."""
        reporter, buffer = _reporter()
        reporter.on_check_complete(_result("s-order", ResultStatus.FAIL, "power 10"))
        assert "power 10" in buffer.getvalue()

    def test_quiet_suppresses_progress(self):
        """Quiet mode prints nothing per check."""
        reporter, buffer = _reporter(quiet=True)
        reporter.on_check_start("a")
        reporter.on_check_complete(_result("a"))
        assert buffer.getvalue() == ""

    def test_header_once(self):
        """The progress header is printed before the first check only."""
        reporter, buffer = _reporter()
        reporter.on_check_start("a")
        reporter.on_check_start("b")
        assert buffer.getvalue().count("Running checks") == 1

    def test_summary(self):
        """The run summary lists failures and the verdict."""
        reporter, buffer = _reporter(quiet=True)
        report = Report(
            command="verify-relations",
            checks=[_result("a"), _result("b", ResultStatus.FAIL, "lhs != rhs")],
        )
        reporter.on_run_complete(report)
        out = buffer.getvalue()
        assert "verify-relations" in out
        assert "lhs != rhs" in out
        assert "FAILED" in out

    def test_summary_passed(self):
        """A clean run ends with PASSED."""
        reporter, buffer = _reporter(quiet=True)
        reporter.on_run_complete(Report(command="eval", checks=[_result("a")]))
        assert "PASSED" in buffer.getvalue()
