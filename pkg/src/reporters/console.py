"""Console reporter using Rich library for formatted CLI output.

Progress goes to stderr so that stdout carries only the rendered report:
- A pass/fail line per check (unless quiet)
- A closing table of counts and of every failing check
"""

from typing import Optional

from rich import box
from rich.console import Console
from rich.markup import escape
from rich.rule import Rule
from rich.table import Table

from src.models import CheckResult, Report, ResultStatus
from src.reporters.base import Reporter

STATUS_MARKUP = {
    ResultStatus.PASS: "[green][PASS][/green]",
    ResultStatus.FAIL: "[red][FAIL][/red]",
    ResultStatus.SKIP: "[yellow][SKIP][/yellow]",
}


class ConsoleReporter(Reporter):
    """Rich-based console reporter.

    Args:
        quiet: If True, suppress per-check output (only show the summary)
        console: Console to print to (defaults to stderr)
    """

    def __init__(self, quiet: bool = False, console: Optional[Console] = None):
        # legacy_windows keeps the output ASCII-safe on Windows consoles
        self.console = console or Console(stderr=True, legacy_windows=True)
        self.quiet = quiet
        self._started = False

    def on_check_start(self, check_id: str) -> None:
        if self._started or self.quiet:
            return
        self._started = True
        self.console.print(Rule("[bold cyan]Running checks[/bold cyan]", style="cyan", characters="-"))

    def on_check_complete(self, result: CheckResult) -> None:
        if self.quiet:
            return
        self.console.print(f"  {STATUS_MARKUP[result.status]} {escape(result.check_id)}: {escape(result.description)}")
        if result.detail and result.status is not ResultStatus.PASS:
            self.console.print(f"     [dim]{escape(result.detail)}[/dim]")

    def on_run_complete(self, report: Report) -> None:
        counts = report.counts()
        self.console.print()
        self.console.print(Rule(f"[bold]{report.command}[/bold]", style="magenta", characters="-"))

        table = Table(show_header=True, header_style="bold magenta", border_style="dim", box=box.ASCII)
        table.add_column("Status", no_wrap=True)
        table.add_column("Checks", justify="right", no_wrap=True)
        for status in ResultStatus:
            table.add_row(STATUS_MARKUP[status], str(counts[status.value]))
        self.console.print(table)

        failures = [c for c in report.sorted_checks() if c.status is ResultStatus.FAIL]
        if failures:
            failed = Table(show_header=True, header_style="bold red", border_style="dim", box=box.ASCII)
            failed.add_column("Check", style="cyan", no_wrap=True)
            failed.add_column("Description")
            failed.add_column("Detail", style="dim")
            for c in failures:
                failed.add_row(escape(c.check_id), escape(c.description), escape(c.detail))
            self.console.print(failed)

        verdict = "[bold green]PASSED[/bold green]" if report.all_passed else "[bold red]FAILED[/bold red]"
        self.console.print(f"{report.command}: {verdict} in {report.duration_seconds:.1f}s")
