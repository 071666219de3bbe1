"""Reporter modules for outputting check results."""

from .base import Reporter
from .console import ConsoleReporter
from .json_reporter import JsonReporter
from .render import RenderError, render

__all__ = ["Reporter", "ConsoleReporter", "JsonReporter", "RenderError", "render"]
