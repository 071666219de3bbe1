"""Registry of derivation scenarios."""

import logging
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional

from src.algebra import ExactMatrix
from src.constraints import DEFAULT_BRANCH_LIMIT
from src.scenarios import even_genus, genus_six, odd_genus, rank_two, symmetric_eight
from src.scenarios.base import Derivation, DerivationReport, DerivationStep, ScenarioError, StepFailed

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Scenario:
    """A registered derivation."""

    id: str
    title: str
    body: Callable[[Derivation, Optional[int]], None]
    ranks: tuple[int, ...] = ()
    default_rank: Optional[int] = None

    def resolve_rank(self, rank: Optional[int]) -> Optional[int]:
        """Default or validate the rank parameter.

        Raises:
            ScenarioError: If a rank is given to a fixed scenario or is out of range
        """
        if not self.ranks:
            if rank is not None:
                raise ScenarioError(f"scenario {self.id} takes no rank")
            return None
        if rank is None:
            return self.default_rank
        if rank not in self.ranks:
            allowed = ", ".join(str(r) for r in self.ranks)
            raise ScenarioError(f"scenario {self.id} supports rank {allowed}, got {rank}")
        return rank


SCENARIOS: dict[str, Scenario] = {
    rank_two.SCENARIO_ID: Scenario(
        id=rank_two.SCENARIO_ID,
        title="GL(2) images of d1, d2, d3 at genus four",
        body=rank_two.run,
    ),
    genus_six.SCENARIO_ID: Scenario(
        id=genus_six.SCENARIO_ID,
        title="Jordan forms of the image of d1 in dimension four at genus six",
        body=genus_six.run,
    ),
    odd_genus.SCENARIO_ID: Scenario(
        id=odd_genus.SCENARIO_ID,
        title="image of u_{2r} at genus 2r+1",
        body=odd_genus.run,
        ranks=odd_genus.RANKS,
        default_rank=odd_genus.DEFAULT_RANK,
    ),
    even_genus.SCENARIO_ID: Scenario(
        id=even_genus.SCENARIO_ID,
        title="images of d_{2i+1} and u_{2r+1} at genus 2r+2",
        body=even_genus.run,
        ranks=even_genus.RANKS,
        default_rank=even_genus.DEFAULT_RANK,
    ),
    symmetric_eight.SCENARIO_ID: Scenario(
        id=symmetric_eight.SCENARIO_ID,
        title="sign-twisted standard representation of S8 in dimension seven",
        body=symmetric_eight.run,
    ),
}


# alternate identifiers; sec7_odd and sec7_even also take the form name(r)
SCENARIO_ALIASES: dict[str, str] = {
    "lemma51": rank_two.SCENARIO_ID,
    "thm13_g6m4": genus_six.SCENARIO_ID,
    "sec7_odd": odd_genus.SCENARIO_ID,
    "sec7_even": even_genus.SCENARIO_ID,
    "lemma83": symmetric_eight.SCENARIO_ID,
}

_WITH_RANK = re.compile(r"^(?P<name>[A-Za-z0-9_-]+)\((?P<rank>\d+)\)$")


def split_id(scenario_id: str) -> tuple[str, Optional[int]]:
    """Canonical id and embedded rank of ``name`` or ``name(r)``."""
    text = scenario_id.strip()
    match = _WITH_RANK.match(text)
    rank = None
    if match:
        text, rank = match["name"], int(match["rank"])
    return SCENARIO_ALIASES.get(text, text), rank


def get_scenario(scenario_id: str) -> Scenario:
    """Look up a scenario by id, alias or ``id(r)``.

    Raises:
        ScenarioError: For an unknown id
    """
    try:
        return SCENARIOS[split_id(scenario_id)[0]]
    except KeyError:
        known = ", ".join([*SCENARIOS, *SCENARIO_ALIASES])
        raise ScenarioError(f"unknown scenario {scenario_id!r}; known: {known}") from None


def _requested_rank(scenario_id: str, rank: Optional[int]) -> Optional[int]:
    embedded = split_id(scenario_id)[1]
    if embedded is not None and rank is not None and embedded != rank:
        raise ScenarioError(f"{scenario_id} conflicts with rank {rank}")
    return rank if rank is not None else embedded


def run_scenario(
    scenario_id: str, rank: Optional[int] = None, branch_limit: int = DEFAULT_BRANCH_LIMIT
) -> DerivationReport:
    """Run a scenario and return its report.

    A failing step stops the derivation; the report then ends with that step.

    Raises:
        ScenarioError: For an unknown id or an unsupported rank
    """
    scenario = get_scenario(scenario_id)
    resolved = scenario.resolve_rank(_requested_rank(scenario_id, rank))
    derivation = Derivation(scenario.id, resolved, branch_limit)
    logger.info("running scenario %s%s", scenario.id, f" at r = {resolved}" if resolved else "")
    try:
        scenario.body(derivation, resolved)
    except StepFailed as e:
        logger.warning("scenario %s stopped at step: %s", scenario.id, e)
    return derivation.report


@lru_cache(maxsize=16)
def _cached_report(scenario_id: str, rank: Optional[int]) -> DerivationReport:
    return run_scenario(scenario_id, rank)


def scenario_matrix(scenario_id: str, name: str, rank: Optional[int] = None) -> ExactMatrix:
    """A named intermediate matrix of a scenario run.

    Raises:
        ScenarioError: For an unknown scenario, rank or matrix name
    """
    scenario = get_scenario(scenario_id)
    report = _cached_report(scenario.id, scenario.resolve_rank(_requested_rank(scenario_id, rank)))
    try:
        return report.matrices[name]
    except KeyError:
        known = ", ".join(sorted(report.matrices))
        raise ScenarioError(f"scenario {scenario_id} has no matrix {name!r}; known: {known}") from None


__all__ = [
    "SCENARIOS",
    "DerivationReport",
    "DerivationStep",
    "Scenario",
    "ScenarioError",
    "SCENARIO_ALIASES",
    "get_scenario",
    "run_scenario",
    "scenario_matrix",
    "split_id",
]
