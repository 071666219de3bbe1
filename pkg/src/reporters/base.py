"""Base reporter interface."""

from abc import ABC, abstractmethod
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from src.models import CheckResult, Report


class Reporter(ABC):
    """Abstract base class for check result reporters."""

    @abstractmethod
    def on_check_start(self, check_id: str) -> None:
        """Called when a check starts."""
        pass

    @abstractmethod
    def on_check_complete(self, result: "CheckResult") -> None:
        """Called when a check completes."""
        pass

    @abstractmethod
    def on_run_complete(self, report: "Report") -> None:
        """Called when every check has run."""
        pass
