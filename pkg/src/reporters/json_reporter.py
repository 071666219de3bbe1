"""JSON reporter writing the structured report to a file."""

from pathlib import Path
from typing import Optional

from src.models import CheckResult, Report
from src.reporters.base import Reporter
from src.reporters.render import render


class JsonReporter(Reporter):
    """Writes the structured report once the run completes.

    Args:
        output_path: File path for JSON output; nothing is written when None
    """

    def __init__(self, output_path: Optional[str] = None):
        self.output_path = output_path

    def on_check_start(self, check_id: str) -> None:
        """No-op for JSON reporter."""
        pass

    def on_check_complete(self, result: CheckResult) -> None:
        """No-op; data comes from the report."""
        pass

    def on_run_complete(self, report: Report) -> dict:
        """Write the report and return its dictionary form."""
        if self.output_path:
            path = Path(self.output_path)
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(render(report, "json"), encoding="utf-8")
        return report.to_dict()
