"""Two-dimensional images of d1, d2, d3 for a genus-four surface.

Runs every case of the classification of homomorphisms to GL(2): a single
eigenvalue with one eigenline (ending in a contradiction), two eigenvalues
(ending in the diagonal and the triangular cases), and confirms that the
image of d1 squares to the identity in all surviving cases.
"""

import logging
from typing import Optional

from sympy import Symbol

from src.algebra import ExactMatrix, identity
from src.constraints import ConstraintSystem, SolveStatus, extract
from src.scenarios.base import Derivation, poly_matrix

logger = logging.getLogger(__name__)

SCENARIO_ID = "rank-two"


def _braid(x: ExactMatrix, y: ExactMatrix) -> tuple[ExactMatrix, ExactMatrix]:
    return x @ y @ x, y @ x @ y


def _single_eigenvalue(d: Derivation) -> None:
    L1 = d.keep("L1", poly_matrix([["l", 1], [0, "l"]]))
    L2 = d.keep("L2", poly_matrix([["l", 0], ["x", "l"]]))
    system = extract(*_braid(L1, L2), units={"l"})
    d.solve_single("braid L1 L2 L1 = L2 L1 L2 with distinct eigenlines", system, {"x": "-l^2"})

    result = d.solve(
        "eigenvalue l with l^2 = 1",
        system.union(ConstraintSystem.of(["l^2 - 1"], units={"l"})),
    )
    pairs = sorted((int(b.value("l")), int(b.value("x"))) for b in result.branches if b.solved)
    d.check(
        "L1 conjugate to its inverse forces x = -1",
        "[(-1, -1), (1, -1)]",
        pairs,
        pairs == [(-1, -1), (1, -1)] and result.status is SolveStatus.FULLY_SOLVED,
    )

    for lam in (1, -1):
        L1l = L1.subs({"l": lam})
        L2l = L2.subs({"l": lam, "x": -1})
        L3 = poly_matrix([[lam, "y"], [0, lam]])
        d.check(f"L3 commutes with L1 at l = {lam}", "true", L3.commutes_with(L1l), L3.commutes_with(L1l))
        sol = d.solve_single(f"braid L2 L3 L2 = L3 L2 L3 at l = {lam}", extract(*_braid(L2l, L3)), {"y": 1})
        L3 = L3.subs(sol)
        d.check(f"L1 = L3 at l = {lam}", "L1 = L3", L3 == L1l, L3 == L1l)
        square = L1l @ L1l
        d.check(
            f"L1 = L3 would force L1^2 = I; rejected at l = {lam}",
            "L1^2 != I",
            square.to_dict()["entries"],
            not square.is_identity(),
        )

    shared = poly_matrix([["l", "x"], [0, "l"]])
    d.solve_single(
        "braid with a shared eigenline",
        extract(*_braid(L1, shared), units={"l"}),
        {"x": 1},
    )
    d.check(
        "a shared eigenline gives L1 = L2, rejected as above",
        "L1 = L2",
        shared.subs({"x": 1}) == L1,
        shared.subs({"x": 1}) == L1,
    )


def _two_eigenvalues(d: Derivation) -> None:
    L3 = poly_matrix([["a", 0], [0, "b"]])
    U = poly_matrix([["c", 0], [0, "e"]])
    result = d.solve("L3 U L3 = U with diagonal L3 and U", extract(L3 @ U @ L3, U, units={"c", "e"}))
    squares_trivial = len(result.branches) == 4 and all(
        b.solved and (L3.subs(b.substitution) ** 2).is_identity() for b in result.branches
    )
    d.check("L3^2 = I on every branch", "4 branches, each with L3^2 = I", len(result.branches), squares_trivial)

    L1 = d.keep("L1-diagonal", poly_matrix([[1, 0], [0, -1]]))
    L2 = d.keep("L2-generic", poly_matrix([["p", "q"], ["s", "t"]]))
    flipped = -L1
    first, second = _braid(L1, L2)
    third, fourth = _braid(flipped, L2)
    total = (first - second) + (third - fourth)
    doubled = (L1 @ L2 @ L1).scale(2)
    d.check("the two braid defects sum to 2 L1 L2 L1 when L3 = -L1", "equal", total == doubled, total == doubled)
    invertible = ConstraintSystem.of([L2.det() * Symbol("w") - 1])
    result = d.solve(
        "L3 = -L1 with both braid relations",
        extract(doubled, ExactMatrix.zeros(2, 2)).union(invertible),
    )
    d.check("L3 = -L1 is inconsistent", SolveStatus.INCONSISTENT.value, result.status.value,
            result.status is SolveStatus.INCONSISTENT)

    d.solve_single(
        "distinct 1-eigenlines of L1 and L2",
        extract(*_braid(poly_matrix([[1, 1], [0, -1]]), poly_matrix([[-1, 0], ["x", 1]]))),
        {"x": 1},
    )
    d.solve_single(
        "distinct (-1)-eigenlines of L1 and L2",
        extract(*_braid(poly_matrix([[-1, 1], [0, 1]]), poly_matrix([[1, 0], ["x", -1]]))),
        {"x": 1},
    )


def _terminal_cases(d: Derivation) -> None:
    triangular = d.keep("case3-L1", poly_matrix([[1, 1], [0, -1]]))
    partner = d.keep("case3-L2", poly_matrix([[-1, 0], [1, 1]]))
    cases = {
        "case 1, lambda = 1": identity(2),
        "case 1, lambda = -1": -identity(2),
        "case 2": d.keep("case2", poly_matrix([[1, 0], [0, -1]])),
        "case 3": triangular,
    }
    for name, L1 in cases.items():
        d.check(f"f(d1)^2 = I in {name}", "I", (L1 @ L1).to_dict()["entries"], (L1 @ L1).is_identity())
    left, right = _braid(triangular, partner)
    d.check("case 3 satisfies the braid relation", "equal", left == right, left == right)


def run(d: Derivation, rank: Optional[int] = None) -> None:
    _single_eigenvalue(d)
    _two_eigenvalues(d)
    _terminal_cases(d)
    d.conclude("f(d1)^2 = I in all three cases")
