"""Deterministic text and JSON renderings of a report."""

import json
from typing import Any

from src.models import Report, ResultStatus

SEPARATOR = " \u2014 "


class RenderError(Exception):
    """Raised when an unknown output format is requested."""

    pass


def _compact(value: Any) -> str:
    return json.dumps(value, sort_keys=True, default=str)


def render_text(report: Report) -> str:
    lines = [f"{report.command} (nonorientable-reps {report.version})"]
    for key in sorted(report.summary):
        lines.append(f"{key}: {_compact(report.summary[key])}")
    for c in report.sorted_checks():
        lines.append(f"{c.status.value.upper()} {c.check_id}{SEPARATOR}{c.description}")
        if c.status is not ResultStatus.PASS and c.detail:
            lines.append(f"  {c.detail}")
        if c.witness is not None:
            lines.append(f"  witness: {_compact(c.witness)}")
    counts = report.counts()
    lines.append(
        f"{len(report.checks)} checks "
        f"({counts['pass']} passed, {counts['fail']} failed, {counts['skip']} skipped)"
    )
    return "\n".join(lines) + "\n"


def render_json(report: Report) -> str:
    return json.dumps(report.to_dict(), indent=2, sort_keys=True, default=str) + "\n"


def render(report: Report, fmt: str = "text") -> str:
    """Render a report as ``text`` or ``json``.

    Raises:
        RenderError: For any other format
    """
    if fmt == "text":
        return render_text(report)
    if fmt == "json":
        return render_json(report)
    raise RenderError(f"unknown format {fmt!r}")
