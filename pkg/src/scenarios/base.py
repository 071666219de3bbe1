"""Shared machinery for derivation scenarios.

A scenario rebuilds the symbolic matrices of a hand derivation, runs the
constraint solver on the relations it uses, and records each conclusion as a
``DerivationStep`` comparing what the derivation expects with what the
computation observed.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Iterable, Optional, Sequence

from sympy import Expr, expand

from src.algebra import ExactMatrix, _to_expr, identity
from src.constraints import (
    DEFAULT_BRANCH_LIMIT,
    ConstraintSystem,
    SolverResult,
    greedy_solve,
)

logger = logging.getLogger(__name__)


class ScenarioError(Exception):
    """Raised when a scenario or one of its matrices is unknown."""

    pass


class StepFailed(Exception):
    """Raised to stop a scenario after a failing step."""

    pass


@dataclass
class DerivationStep:
    """One checked conclusion of a derivation."""

    description: str
    expected: str
    observed: str
    passed: bool
    detail: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict:
        payload: dict[str, Any] = {
            "description": self.description,
            "expected": self.expected,
            "observed": self.observed,
            "status": "pass" if self.passed else "fail",
        }
        if self.detail:
            payload["detail"] = self.detail
        return payload


@dataclass
class DerivationReport:
    """Ordered steps of a scenario run plus the matrices it built."""

    scenario: str
    rank: Optional[int] = None
    steps: list[DerivationStep] = field(default_factory=list)
    matrices: dict[str, ExactMatrix] = field(default_factory=dict, repr=False)
    conclusion: str = ""

    @property
    def passed(self) -> bool:
        return bool(self.steps) and all(step.passed for step in self.steps)

    def to_dict(self) -> dict:
        return {
            "scenario": self.scenario,
            "rank": self.rank,
            "passed": self.passed,
            "conclusion": self.conclusion,
            "steps": [step.to_dict() for step in self.steps],
        }


class Derivation:
    """Recorder used by scenario bodies.

    Every ``check`` appends a step; a failing check raises ``StepFailed`` so
    that later steps never run on a wrong intermediate result.
    """

    def __init__(self, scenario: str, rank: Optional[int] = None, branch_limit: int = DEFAULT_BRANCH_LIMIT):
        self.report = DerivationReport(scenario=scenario, rank=rank)
        self.branch_limit = branch_limit

    def check(self, description: str, expected: str, observed: Any, passed: bool, **detail: Any) -> None:
        step = DerivationStep(description, expected, str(observed), bool(passed), dict(detail))
        self.report.steps.append(step)
        logger.info("%s: %s", "PASS" if step.passed else "FAIL", description)
        if not step.passed:
            raise StepFailed(description)

    def keep(self, name: str, matrix: ExactMatrix) -> ExactMatrix:
        self.report.matrices[name] = matrix
        return matrix

    def conclude(self, text: str) -> None:
        self.report.conclusion = text

    def solve(
        self,
        description: str,
        system: ConstraintSystem,
        eliminate_first: Sequence[str] = (),
    ) -> SolverResult:
        """Run the solver; an overflowing branch limit fails the step."""
        result = greedy_solve(system, branch_limit=self.branch_limit, eliminate_first=eliminate_first)
        if result.truncated:
            self.check(
                description,
                f"at most {self.branch_limit} branches",
                "branch limit reached",
                False,
                solver=result.to_dict(),
            )
        return result

    def solve_single(
        self,
        description: str,
        system: ConstraintSystem,
        expected: dict[str, Any],
        eliminate_first: Sequence[str] = (),
        residual: Iterable[Any] = (),
    ) -> dict[str, Expr]:
        """Solve and require one branch whose values and residual match.

        Args:
            description: Step description
            system: Constraints to solve
            expected: Required values of eliminated variables
            eliminate_first: Solver priority
            residual: Required residual polynomials (canonical forms are compared)

        Returns:
            The branch substitution
        """
        result = self.solve(description, system, eliminate_first)
        want_residual = ConstraintSystem.of(residual)
        observed = "no consistent branch"
        passed = False
        substitution: dict[str, Expr] = {}
        if len(result.branches) == 1:
            branch = result.branches[0]
            substitution = branch.substitution
            passed = all(same_value(branch.value(k), v) for k, v in expected.items()) and set(
                branch.residual.polynomials
            ) == set(want_residual.polynomials)
            observed = describe_branch(branch.substitution, branch.residual)
        elif result.branches:
            observed = f"{len(result.branches)} branches"
        wanted = describe_branch({k: as_expr(v) for k, v in expected.items()}, want_residual)
        self.check(description, wanted, observed, passed, solver=result.to_dict())
        return substitution

    def solve_each(
        self,
        description: str,
        system: ConstraintSystem,
        expected: dict[str, Any],
        eliminate_first: Sequence[str] = (),
    ) -> SolverResult:
        """Solve and require the expected values on every consistent branch."""
        result = self.solve(description, system, eliminate_first)
        passed = bool(result.branches) and all(
            same_value(branch.value(k), v) for branch in result.branches for k, v in expected.items()
        )
        wanted = ", ".join(f"{k} = {as_expr(v)}" for k, v in expected.items())
        self.check(
            description,
            f"{wanted} on every branch",
            f"{len(result.branches)} branches: "
            + "; ".join(describe_branch(b.substitution, b.residual) for b in result.branches),
            passed,
            solver=result.to_dict(),
        )
        return result


def as_expr(value: Any) -> Expr:
    return expand(_to_expr(value))


def same_value(left: Any, right: Any) -> bool:
    return expand(as_expr(left) - as_expr(right)) == 0


def describe_branch(substitution: dict[str, Any], residual: ConstraintSystem) -> str:
    parts = [f"{k} = {v}" for k, v in substitution.items()]
    parts += [f"{p} = 0" for p in residual.to_list()]
    return ", ".join(parts) if parts else "no constraint"


def poly_matrix(rows: Sequence[Sequence[Any]]) -> ExactMatrix:
    """Matrix over the smallest ring holding the entries (strings are parsed)."""
    return ExactMatrix.from_exprs(rows)


def embed(block: ExactMatrix, start: int, m: int) -> ExactMatrix:
    """I_m with ``block`` placed at 1-based rows/cols start .. start+k-1."""
    rows = identity(m).to_lists()
    for i in range(block.rows):
        for j in range(block.cols):
            rows[start - 1 + i][start - 1 + j] = block.entry(i, j)
    return ExactMatrix.from_exprs(rows)


def place(entries: dict[tuple[int, int], Any], m: int, base: Optional[ExactMatrix] = None) -> ExactMatrix:
    """Copy of ``base`` (default I_m) with 1-based entries overwritten."""
    start = base if base is not None else identity(m)
    return start.replace({(i - 1, j - 1): v for (i, j), v in entries.items()})


def unit_vector_column(M: ExactMatrix, col: int, value: Any) -> bool:
    """True iff column ``col`` (1-based) of M is value * e_col."""
    for i in range(M.rows):
        want = as_expr(value) if i == col - 1 else 0
        if expand(M.entry(i, col - 1) - want) != 0:
            return False
    return True


def diagonal(values: Sequence[Any]) -> ExactMatrix:
    n = len(values)
    return ExactMatrix.from_exprs([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])


def char_poly_is(M: ExactMatrix, target: Expr, variable: str = "T") -> bool:
    return expand(M.char_poly(variable).as_expr() - target) == 0

