"""Polynomial constraints extracted from matrix identities, and a greedy solver.

A ``ConstraintSystem`` is a set of polynomials over Q, each asserting p = 0.
The solver handles the elimination patterns that hand derivations use:

- a variable occurring linearly with a constant coefficient is eliminated
- a factor that is a power of a known-nonzero ("unit") variable is dropped
- a univariate equation with several rational factors splits into branches
- a monomial equation such as x*y = 0 removes the terms it divides elsewhere
- an equation that is a multiple of another one is redundant

Anything else stays in the residual of its branch.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Iterable, Iterator, Mapping, Optional, Sequence

from sympy import Expr, Integer, Symbol, expand, together
from sympy.polys.domains import QQ
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyElement, ring

from src.algebra import ExactMatrix, _to_expr, format_scalar, natural_key, sort_names

logger = logging.getLogger(__name__)

DEFAULT_BRANCH_LIMIT = 64


class ConstraintError(Exception):
    """Raised when a constraint system cannot be built or solved."""

    pass


class SolveStatus(Enum):
    """Overall outcome of a solver run."""

    FULLY_SOLVED = "fully-solved"
    PARTIALLY_SOLVED = "partially-solved"
    INCONSISTENT = "inconsistent"


def canonical(expr: Any) -> Optional[Expr]:
    """Expanded polynomial with leading coefficient 1 (grlex), or None for zero."""
    expr = expand(_to_expr(expr))
    if expr == 0:
        return None
    names = sort_names(str(s) for s in expr.free_symbols)
    if not names:
        return Integer(1)
    R, *_ = ring([Symbol(n) for n in names], QQ, grlex)
    return R.from_expr(expr).monic().as_expr()


def _expr_key(expr: Expr) -> tuple:
    return (len(str(expr)), str(expr))


@dataclass(frozen=True)
class ConstraintSystem:
    """Polynomials p_k asserting p_k = 0, plus variables known to be nonzero."""

    variables: tuple[str, ...]
    polynomials: tuple[Expr, ...]
    units: frozenset[str] = frozenset()

    @classmethod
    def of(
        cls, polynomials: Iterable[Any], units: Iterable[str] = (), variables: Iterable[str] = ()
    ) -> "ConstraintSystem":
        """Canonicalize, drop zeros and deduplicate."""
        seen: dict[str, Expr] = {}
        for p in polynomials:
            c = canonical(p)
            if c is not None:
                seen.setdefault(str(c), c)
        polys = tuple(sorted(seen.values(), key=_expr_key))
        names = set(variables) | {str(s) for p in polys for s in p.free_symbols}
        return cls(variables=sort_names(names), polynomials=polys, units=frozenset(units))

    def __len__(self) -> int:
        return len(self.polynomials)

    def __iter__(self) -> Iterator[Expr]:
        return iter(self.polynomials)

    @property
    def is_empty(self) -> bool:
        return not self.polynomials

    @property
    def is_inconsistent(self) -> bool:
        """True if some polynomial is a nonzero constant."""
        return any(not p.free_symbols for p in self.polynomials)

    def union(self, other: "ConstraintSystem") -> "ConstraintSystem":
        return ConstraintSystem.of(
            self.polynomials + other.polynomials,
            self.units | other.units,
            self.variables + other.variables,
        )

    def subs(self, mapping: Mapping[str, Any]) -> "ConstraintSystem":
        """Substitute simultaneously; rational results are cleared to numerators."""
        table = {Symbol(k): _to_expr(v) for k, v in mapping.items()}
        polys = [together(p.subs(table, simultaneous=True)).as_numer_denom()[0] for p in self.polynomials]
        return ConstraintSystem.of(polys, self.units)

    def to_list(self) -> list[str]:
        return [str(format_scalar(p)) for p in self.polynomials]

    @classmethod
    def from_list(cls, texts: Sequence[str], units: Iterable[str] = ()) -> "ConstraintSystem":
        return cls.of([_to_expr(t) for t in texts], units)

    def __str__(self) -> str:
        return "{" + ", ".join(self.to_list()) + "}"


def nonzero_entries(L: ExactMatrix, R: ExactMatrix) -> dict[tuple[int, int], Expr]:
    """Nonzero entries of L - R keyed by 1-based (row, column).

    Raises:
        ConstraintError: On dimension mismatch
    """
    if L.shape != R.shape:
        raise ConstraintError(f"dimension mismatch: {L.shape} vs {R.shape}")
    diff = L - R
    found = {}
    for i in range(diff.rows):
        for j in range(diff.cols):
            value = together(diff.entry(i, j))
            if value != 0:
                found[(i + 1, j + 1)] = expand(value)
    return found


def extract(L: ExactMatrix, R: ExactMatrix, units: Iterable[str] = ()) -> ConstraintSystem:
    """Entrywise constraints of L = R.

    Rational-function entries contribute their numerators.

    Raises:
        ConstraintError: On dimension mismatch
    """
    entries = nonzero_entries(L, R)
    polys = [together(v).as_numer_denom()[0] for v in entries.values()]
    system = ConstraintSystem.of(polys, units, L.free_symbols() + R.free_symbols())
    logger.debug("extracted %d constraints from a %dx%d identity", len(system), L.rows, L.cols)
    return system


def extract_all(pairs: Iterable[tuple[ExactMatrix, ExactMatrix]], units: Iterable[str] = ()) -> ConstraintSystem:
    """Union of the constraints of several identities."""
    system = ConstraintSystem.of([], units)
    for left, right in pairs:
        system = system.union(extract(left, right, units))
    return system


def verify_assignment(system: ConstraintSystem, subst: Mapping[str, Any]) -> bool:
    """True iff every polynomial vanishes after the substitution."""
    return system.subs(subst).is_empty


# -- solver -----------------------------------------------------------------


@dataclass
class Branch:
    """A substitution and what remains unsolved under it."""

    substitution: dict[str, Expr]
    residual: ConstraintSystem
    path: tuple[str, ...] = ()

    @property
    def solved(self) -> bool:
        return self.residual.is_empty

    def value(self, name: str) -> Expr:
        return self.substitution.get(name, Symbol(name))

    def to_dict(self) -> dict:
        return {
            "substitution": {k: str(format_scalar(v)) for k, v in self.substitution.items()},
            "residual": self.residual.to_list(),
            "path": list(self.path),
        }


@dataclass
class SolverResult:
    """Consistent branches of a solver run."""

    branches: list[Branch]
    truncated: bool = False
    rejected: list[tuple[str, ...]] = field(default_factory=list)

    @property
    def status(self) -> SolveStatus:
        if not self.branches:
            return SolveStatus.INCONSISTENT
        if self.truncated or any(not b.solved for b in self.branches):
            return SolveStatus.PARTIALLY_SOLVED
        return SolveStatus.FULLY_SOLVED

    def to_dict(self) -> dict:
        return {
            "status": self.status.value,
            "truncated": self.truncated,
            "branches": [b.to_dict() for b in self.branches],
            "rejected": [list(p) for p in self.rejected],
        }


class _Engine:
    def __init__(self, names: tuple[str, ...], units: frozenset[str], eliminate_first: Sequence[str]):
        self.names = names
        self.R, *gens = ring([Symbol(n) for n in names], QQ, grlex)
        self.gens = dict(zip(names, gens))
        self.units = units
        self.priority = [n for n in eliminate_first if n in self.gens]
        rest = sorted((n for n in names if n not in self.priority), key=natural_key, reverse=True)
        self.order = self.priority + rest

    def lift(self, expr: Expr) -> PolyElement:
        return self.R.from_expr(expr) if expr.free_symbols else self.R(expr)

    def core(self, p: PolyElement) -> list[PolyElement]:
        """Distinct non-unit irreducible factors, each made monic."""
        _, factors = p.factor_list()
        found = []
        for f, _k in factors:
            if f.is_ground:
                continue
            if f.is_monomial and all(self.names[i] in self.units for i, e in enumerate(f.monoms()[0]) if e):
                continue
            found.append(f.monic())
        return sorted(found, key=lambda f: (f.degree(), str(f)))

    def reduce(self, p: PolyElement) -> Optional[PolyElement]:
        """Product of the distinct core factors, or None when p is a nonzero constant."""
        if not p:
            return p
        factors = self.core(p)
        if not factors:
            return None
        total = self.R.one
        for f in factors:
            total = total * f
        return total.monic()

    def strip_monomials(self, eqs: list[PolyElement]) -> list[PolyElement]:
        """Drop every term divisible by a monomial equation of the list."""
        monomials = [p.monoms()[0] for p in eqs if p.is_monomial]
        if not monomials:
            return eqs

        def divisible(monom: tuple[int, ...]) -> bool:
            return any(all(a >= b for a, b in zip(monom, m)) for m in monomials)

        stripped = []
        for p in eqs:
            if p.is_monomial:
                stripped.append(p)
                continue
            stripped.append(self.R({mon: c for mon, c in p.terms() if not divisible(mon)}))
        return stripped

    def drop_multiples(self, eqs: list[PolyElement]) -> list[PolyElement]:
        kept: list[PolyElement] = []
        for p in eqs:
            if not any(not p.rem(q) for q in kept):
                kept.append(p)
        return kept

    def linear_candidate(self, eqs: list[PolyElement]) -> Optional[tuple[str, PolyElement]]:
        for name in self.order:
            x = self.gens[name]
            for p in eqs:
                if p.degree(x) == 1:
                    c = p.coeff_wrt(x, 1)
                    if c.is_ground and c:
                        value = -(p - c * x).quo_ground(c.LC)
                        return name, value
        return None

    def branch_candidate(self, eqs: list[PolyElement]) -> Optional[tuple[int, list[PolyElement]]]:
        for k, p in enumerate(eqs):
            if len(p.degrees()) and sum(1 for d in p.degrees() if d) == 1:
                factors = self.core(p)
                if len(factors) > 1:
                    return k, factors
        return None


def greedy_solve(
    system: ConstraintSystem,
    branch_limit: int = DEFAULT_BRANCH_LIMIT,
    eliminate_first: Sequence[str] = (),
) -> SolverResult:
    """Eliminate, branch and collect the consistent branches.

    Args:
        system: Constraints to solve
        branch_limit: Maximum number of leaves explored
        eliminate_first: Variables to eliminate before any other, in order

    Returns:
        A result whose branches carry substitutions in terms of the remaining
        variables; ``truncated`` is set when the branch limit was hit

    Raises:
        ConstraintError: If branch_limit < 1
    """
    if branch_limit < 1:
        raise ConstraintError(f"branch_limit must be at least 1, got {branch_limit}")
    if system.is_empty:
        return SolverResult(branches=[Branch({}, system)])
    if not system.variables:
        return SolverResult(branches=[], rejected=[()])
    engine = _Engine(system.variables, system.units, eliminate_first)
    pending: list[tuple[dict[str, PolyElement], list[PolyElement], tuple[str, ...]]] = [
        ({}, [engine.lift(p) for p in system.polynomials], ())
    ]
    result = SolverResult(branches=[])
    leaves = 1
    while pending:
        subst, eqs, path = pending.pop(0)
        outcome = _run_branch(engine, subst, eqs)
        if outcome is None:
            result.rejected.append(path)
            logger.debug("branch %s is inconsistent", path or "root")
            continue
        subst, eqs = outcome
        split = engine.branch_candidate(eqs)
        if split is not None and leaves - 1 + len(split[1]) <= branch_limit:
            k, factors = split
            leaves += len(factors) - 1
            for f in factors:
                child = eqs[:k] + [f] + eqs[k + 1:]
                pending.append((dict(subst), child, path + (f"{f.as_expr()} = 0",)))
            continue
        if split is not None:
            result.truncated = True
            logger.warning("branch limit %d reached; keeping an unsplit residual", branch_limit)
        result.branches.append(_finish(system, subst, eqs, path))
    logger.debug("solver finished with %d branches (%d rejected)", len(result.branches), len(result.rejected))
    return result


def _run_branch(
    engine: _Engine, subst: dict[str, PolyElement], eqs: list[PolyElement]
) -> Optional[tuple[dict[str, PolyElement], list[PolyElement]]]:
    while True:
        normalized = _normalize(engine, eqs)
        if normalized is None:
            return None
        eqs = normalized
        step = engine.linear_candidate(eqs)
        if step is None:
            return subst, eqs
        name, value = step
        x = engine.gens[name]
        subst = {k: v.compose(x, value) for k, v in subst.items()}
        subst[name] = value
        eqs = [p.compose(x, value) for p in eqs]


def _normalize(engine: _Engine, eqs: list[PolyElement]) -> Optional[list[PolyElement]]:
    """Reduce to core factors and strip monomial multiples until stable; None if inconsistent."""
    while True:
        reduced = []
        for p in eqs:
            q = engine.reduce(p)
            if q is None:
                return None
            if q:
                reduced.append(q)
        reduced = _dedupe(reduced)
        stripped = engine.strip_monomials(reduced)
        if stripped == reduced:
            return engine.drop_multiples(reduced)
        eqs = stripped


def _dedupe(eqs: list[PolyElement]) -> list[PolyElement]:
    seen: dict[str, PolyElement] = {}
    for p in eqs:
        seen.setdefault(str(p), p)
    return sorted(seen.values(), key=lambda p: (p.degree(), str(p)))


def _finish(
    system: ConstraintSystem,
    subst: dict[str, PolyElement],
    eqs: list[PolyElement],
    path: tuple[str, ...],
) -> Branch:
    substitution = {name: subst[name].as_expr() for name in sort_names(subst)}
    residual = ConstraintSystem.of([p.as_expr() for p in eqs], system.units)
    return Branch(substitution=substitution, residual=residual, path=path)
