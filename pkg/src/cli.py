"""Command-line interface for nonorientable-reps.

Provides argument parsing and the main entry point. Each command builds a
suite of checks, runs it, and writes the rendered report to stdout; progress
and logs go to stderr.
"""

import argparse
import logging
import sys
from typing import Any, Optional

from rich.console import Console
from rich.logging import RichHandler

from src.algebra import AlgebraError
from src.checks import COMMANDS, CommandRequest, UsageError, build_suite
from src.config import N4_READINGS, OUTPUT_FORMATS, ConfigError, load_settings
from src.constraints import ConstraintError
from src.homology import CLI_REP_NAMES, HomologyError
from src.mod2 import Mod2Error
from src.models import CheckResult, Report
from src.presentation import PresentationError
from src.reporters import ConsoleReporter, JsonReporter, RenderError, Reporter, render
from src.runner import CheckRunner
from src.scenarios import ScenarioError

# exception type -> "<Kind> error: ..." prefix
ERROR_KINDS: dict[type, str] = {
    ConfigError: "Configuration",
    UsageError: "Usage",
    PresentationError: "Word",
    HomologyError: "Representation",
    Mod2Error: "Mod-2",
    ScenarioError: "Scenario",
    AlgebraError: "Algebra",
    ConstraintError: "Constraint",
    RenderError: "Output",
}

LOG_LEVELS = (logging.WARNING, logging.INFO, logging.DEBUG)


class CompositeReporter(Reporter):
    """Reporter that delegates to multiple reporters.

    Allows using both ConsoleReporter and JsonReporter simultaneously.
    """

    def __init__(self, reporters: list[Reporter]):
        self._reporters = reporters

    def on_check_start(self, check_id: str) -> None:
        """Delegate to all reporters."""
        for reporter in self._reporters:
            reporter.on_check_start(check_id)

    def on_check_complete(self, result: CheckResult) -> None:
        """Delegate to all reporters."""
        for reporter in self._reporters:
            reporter.on_check_complete(result)

    def on_run_complete(self, report: Report) -> None:
        """Delegate to all reporters."""
        for reporter in self._reporters:
            reporter.on_run_complete(report)


def parse_args(argv: Optional[list[str]] = None) -> argparse.Namespace:
    """Parse command-line arguments.

    Args:
        argv: Command-line arguments (defaults to sys.argv[1:])

    Returns:
        Parsed arguments namespace
    """
    parser = argparse.ArgumentParser(
        prog="nonorientable-reps",
        description="Exact checks of low-dimensional representations of mapping class groups of nonorientable surfaces",
    )

    parser.add_argument("command", choices=COMMANDS, help="What to compute or verify")
    parser.add_argument("scenario", nargs="?", help="Scenario id (scenario command only)")

    parser.add_argument("--genus", type=int, metavar="G", help="Number of crosscaps g")
    parser.add_argument("--rep", choices=sorted(CLI_REP_NAMES), help="Representation (default: psi1)")
    parser.add_argument("--word", metavar="WORD", help='Word such as "d1 d2^-1 u3"')
    parser.add_argument("--rank", type=int, metavar="R", help="Rank r of a parametrized scenario")

    parser.add_argument("--format", dest="output_format", choices=OUTPUT_FORMATS, help="Report format on stdout")
    parser.add_argument("-o", "--out", metavar="PATH", help="Also write the JSON report to a file")
    parser.add_argument("--branch-limit", type=int, metavar="N", help="Solver branch limit")
    parser.add_argument("--seed", dest="random_seed", type=int, metavar="N", help="Seed for sampled checks")
    parser.add_argument("--samples", dest="sample_words", type=int, metavar="N", help="Number of sampled words")
    parser.add_argument("--n4-reading", choices=N4_READINGS, help="Reading of the suspect genus-four relator")

    parser.add_argument(
        "-c", "--config",
        metavar="PATH",
        help="Path to a JSON settings file (default: nonorientable.json when present)",
    )
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO logs, -vv for DEBUG")
    parser.add_argument("-q", "--quiet", action="store_true", help="Suppress per-check progress, show only summary")

    return parser.parse_args(argv)


def setup_logging(verbosity: int) -> None:
    """Route library logs through Rich on stderr."""
    level = LOG_LEVELS[min(verbosity, len(LOG_LEVELS) - 1)]
    logging.basicConfig(
        level=level,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=Console(stderr=True), show_path=False)],
        force=True,
    )


def setting_overrides(args: argparse.Namespace) -> dict[str, Any]:
    return {
        "output_format": args.output_format,
        "branch_limit": args.branch_limit,
        "random_seed": args.random_seed,
        "sample_words": args.sample_words,
        "n4_reading": args.n4_reading,
    }


def create_reporters(args: argparse.Namespace) -> list[Reporter]:
    """Console progress always; a JSON file when --out is given."""
    reporters: list[Reporter] = [ConsoleReporter(quiet=args.quiet)]
    if args.out:
        reporters.append(JsonReporter(output_path=args.out))
    return reporters


def error_kind(error: Exception) -> str:
    for kind, label in ERROR_KINDS.items():
        if isinstance(error, kind):
            return label
    return "Internal"


def main(argv: Optional[list[str]] = None) -> int:
    """Main entry point.

    Args:
        argv: Command-line arguments (defaults to sys.argv[1:])

    Returns:
        Exit code: 0 when every check passed, 1 for failed checks, 2 for errors
    """
    echo = list(sys.argv[1:] if argv is None else argv)
    args = parse_args(argv)
    setup_logging(args.verbose)

    try:
        settings = load_settings(args.config).merged(setting_overrides(args))
        if args.scenario is not None and args.command != "scenario":
            raise UsageError(f"{args.command} takes no positional argument")
        request = CommandRequest(
            command=args.command,
            genus=args.genus,
            rep=args.rep,
            word=args.word,
            scenario=args.scenario,
            rank=args.rank,
            settings=settings,
        )
        suite = build_suite(request)
    except tuple(ERROR_KINDS) as e:
        print(f"{error_kind(e)} error: {e}", file=sys.stderr)
        return 2

    reporters = create_reporters(args)
    reporter = reporters[0] if len(reporters) == 1 else CompositeReporter(reporters)

    runner = CheckRunner(args.command, echo, reporter=reporter)
    report = runner.run(suite)
    sys.stdout.write(render(report, settings.output_format))

    return 0 if report.all_passed else 1


if __name__ == "__main__":
    sys.exit(main())
