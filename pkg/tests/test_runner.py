"""Tests for the check runner."""

from src import __version__
from src.checks import Check, CheckOutcome, Suite
from src.models import ResultStatus
from src.reporters.base import Reporter
from src.runner import CheckRunner


def _check(check_id, passed=True):
    return Check(check_id, f"check {check_id}", lambda: CheckOutcome.of(passed, witness={"id": check_id}))


class TestCheckRunner:
    """Tests for CheckRunner."""

    def test_runs_in_id_order(self):
        """Checks run sorted by id whatever the suite order."""
        seen = []

        def tracked(check_id):
            def run():
                seen.append(check_id)
                return CheckOutcome.of(True)

            return Check(check_id, check_id, run)

        CheckRunner("eval").run(Suite([tracked("b"), tracked("a"), tracked("c")]))
        assert seen == ["a", "b", "c"]

    def test_report_fields(self):
        """The report echoes command, argv, version and summary."""
        report = CheckRunner("eval", ["eval", "--genus", "5"]).run(Suite([_check("a")], {"k": 1}))
        assert report.command == "eval"
        assert report.argv == ["eval", "--genus", "5"]
        assert report.version == __version__
        assert report.summary == {"k": 1}
        assert report.all_passed

    def test_failure_keeps_witness(self):
        """A failing outcome keeps its witness."""
        report = CheckRunner("eval").run(Suite([_check("a", passed=False)]))
        assert report.checks[0].status is ResultStatus.FAIL
        assert report.checks[0].witness == {"id": "a"}
        assert not report.all_passed

    def test_exception_becomes_failure(self):
        """An exception inside a check is a failing result, not a crash."""

        def boom():
            raise ValueError("singular")

        report = CheckRunner("eval").run(Suite([Check("a", "explodes", boom), _check("b")]))
        first, second = report.checks
        assert first.status is ResultStatus.FAIL
        assert first.detail == "ValueError: singular"
        assert second.status is ResultStatus.PASS

    def test_skip(self):
        """Skipped outcomes are recorded as SKIP."""
        report = CheckRunner("eval").run(Suite([Check("a", "skipped", lambda: CheckOutcome.skip("no image"))]))
        assert report.checks[0].status is ResultStatus.SKIP
        assert report.all_passed

    def test_reporter_hooks(self, mocker):
        """Reporter hooks fire per check and once at the end."""
        reporter = mocker.Mock(spec=Reporter)
        report = CheckRunner("eval", reporter=reporter).run(Suite([_check("a"), _check("b")]))
        assert [c.args[0] for c in reporter.on_check_start.call_args_list] == ["a", "b"]
        assert reporter.on_check_complete.call_count == 2
        reporter.on_run_complete.assert_called_once_with(report)
