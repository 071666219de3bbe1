"""Check runner.

Executes the checks of a suite in id order, times each one and hands the
results to a reporter. An exception raised inside a check becomes a failing
result instead of aborting the run.
"""

import logging
import time
from typing import Optional

from src import __version__
from src.checks import Check, Suite
from src.models import CheckResult, Report, ResultStatus
from src.reporters.base import Reporter

logger = logging.getLogger(__name__)


class CheckRunner:
    """Runs one command's suite.

    Args:
        command: Command name echoed into the report
        argv: Invocation echoed into the report
        reporter: Optional reporter for progress callbacks
    """

    def __init__(self, command: str, argv: Optional[list[str]] = None, reporter: Optional[Reporter] = None):
        self.command = command
        self.argv = list(argv or [])
        self.reporter = reporter

    def run_check(self, check: Check) -> CheckResult:
        start = time.perf_counter()
        try:
            outcome = check.run()
        except Exception as e:
            logger.debug("check %s raised", check.check_id, exc_info=True)
            return CheckResult(
                check_id=check.check_id,
                description=check.description,
                status=ResultStatus.FAIL,
                detail=f"{type(e).__name__}: {e}",
                duration_seconds=time.perf_counter() - start,
            )
        return CheckResult(
            check_id=check.check_id,
            description=check.description,
            status=outcome.status,
            detail=outcome.detail,
            witness=outcome.witness,
            duration_seconds=time.perf_counter() - start,
        )

    def run(self, suite: Suite) -> Report:
        start = time.perf_counter()
        report = Report(command=self.command, argv=self.argv, version=__version__, summary=dict(suite.summary))

        for check in sorted(suite.checks, key=lambda c: c.check_id):
            if self.reporter:
                self.reporter.on_check_start(check.check_id)
            result = self.run_check(check)
            logger.info("%s %s", result.status.value.upper(), result.check_id)
            report.checks.append(result)
            if self.reporter:
                self.reporter.on_check_complete(result)

        report.duration_seconds = time.perf_counter() - start
        if self.reporter:
            self.reporter.on_run_complete(report)
        return report
