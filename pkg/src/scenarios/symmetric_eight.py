"""Seven-dimensional representation of the symmetric group on eight letters.

The images L_1 .. L_7 of the standard generators are the standard
representation twisted by the sign. The scenario checks the Coxeter relations
and irreducibility, then shows that an M commuting with L_1 .. L_5 and L_7
and braiding with L_6 must be L_7, and that the same holds for the image
U_7 of the last crosscap.
"""

import logging
from typing import Optional

from sympy import Rational, Symbol

from src.algebra import ExactMatrix, block_diag, commutant_basis, identity
from src.constraints import ConstraintSystem, SolveStatus, extract, extract_all
from src.scenarios.base import Derivation, char_poly_is, poly_matrix, same_value, unit_vector_column

logger = logging.getLogger(__name__)

SCENARIO_ID = "symmetric-eight"
DIMENSION = 7

BLOCK_A = [[1, -1], [0, -1]]
BLOCK_B = [[-1, 0], [-1, 1]]
BLOCK_C = [[-1, 0, 0], [-1, 1, -1], [0, 0, -1]]


def generators() -> list[ExactMatrix]:
    """L_1 .. L_7; L_i fixes e_i and negates a complementary hyperplane."""
    A, B, C = (ExactMatrix.from_rows(block) for block in (BLOCK_A, BLOCK_B, BLOCK_C))
    mats = [block_diag(A, -identity(5))]
    for i in range(2, 7):
        blocks = [C]
        if i > 2:
            blocks.insert(0, -identity(i - 2))
        if i < 6:
            blocks.append(-identity(6 - i))
        mats.append(block_diag(*blocks))
    mats.append(block_diag(-identity(5), B))
    return mats


def _eigen_frame(x: str, y: str) -> ExactMatrix:
    """Diagonal x_i off the sixth column, sixth column y_1 .. y_7."""
    rows: list[list] = [[0] * DIMENSION for _ in range(DIMENSION)]
    for i in range(DIMENSION):
        if i != 5:
            rows[i][i] = f"{x}{i + 1}"
        rows[i][5] = f"{y}{i + 1}"
    return poly_matrix(rows)


def _coxeter(d: Derivation, L: list[ExactMatrix]) -> None:
    involutions = all((Li @ Li).is_identity() for Li in L)
    d.check("L_i^2 = I", "true", involutions, involutions)
    braids = all(L[i] @ L[i + 1] @ L[i] == L[i + 1] @ L[i] @ L[i + 1] for i in range(6))
    d.check("L_i L_{i+1} L_i = L_{i+1} L_i L_{i+1}", "true", braids, braids)
    commute = all(L[i].commutes_with(L[j]) for i in range(7) for j in range(i + 2, 7))
    d.check("L_i L_j = L_j L_i for |i - j| > 1", "true", commute, commute)
    space = commutant_basis(L, DIMENSION)
    d.check("L_1 .. L_7 act irreducibly", "commutant of dimension 1", space.rank, space.rank == 1)
    T = Symbol("T")
    fixed = all(unit_vector_column(L[i], i + 1, 1) for i in range(7))
    spectra = all(char_poly_is(Li, (T - 1) * (T + 1) ** 6) for Li in L)
    d.check("L_i e_i = e_i and -1 has multiplicity six", "true", fixed and spectra, fixed and spectra)


def _commuting_frame(d: Derivation, L: list[ExactMatrix], x: str, y: str) -> ExactMatrix:
    frame = _eigen_frame(x, y)
    pairs = [(frame @ L[i], L[i] @ frame) for i in (0, 1, 2, 3, 4, 6)]
    expected: dict[str, str] = {f"{x}{i}": f"{x}1" for i in range(2, 6)}
    expected.update({f"{y}{i}": f"{i}*{y}1" for i in range(2, 6)})
    expected[f"{y}6"] = f"{x}1 + 6*{y}1"
    expected[f"{x}7"] = f"{x}1 + 6*{y}1 - 2*{y}7"
    sol = d.solve_single(
        "commutes with L_1 .. L_5 and L_7",
        extract_all(pairs),
        expected,
        eliminate_first=list(expected),
    )
    return frame.subs(sol)


def _derive_m(d: Derivation, L: list[ExactMatrix]) -> ExactMatrix:
    M = d.keep("M-frame", _commuting_frame(d, L, "x", "y"))
    T, x1 = Symbol("T"), Symbol("x1")
    y6, x7 = M.entry(5, 5), M.entry(6, 6)
    d.check(
        "char poly of M",
        "(T - x1)^5 (T - y6) (T - x7)",
        M.char_poly("T").as_expr(),
        char_poly_is(M, (T - x1) ** 5 * (T - y6) * (T - x7)),
    )
    survivors = []
    for sign, y1, y7 in ((1, Rational(1, 3), 1), (-1, 0, -1)):
        eigen = ConstraintSystem.of([x1 + 1, y6 - sign, x7 + sign])
        sol = d.solve_single(
            f"M conjugate to L_1 with y6 = {sign}",
            eigen,
            {"x1": -1, "y1": y1, "y7": y7},
            eliminate_first=["x1", "y1", "y7"],
        )
        candidate = M.subs(sol)
        braid = extract(candidate @ L[5] @ candidate, L[5] @ candidate @ L[5])
        holds = braid.is_empty
        d.check(
            f"M L_6 M = L_6 M L_6 at y6 = {sign}",
            "rejected" if sign == 1 else "satisfied",
            "satisfied" if holds else f"residual {braid}",
            holds == (sign == -1),
        )
        if holds:
            survivors.append(candidate)
    M = d.keep("M", survivors[0])
    d.check("M = L_7", "equal", M == L[6], M == L[6])
    return M


def _derive_u7(d: Derivation, L: list[ExactMatrix]) -> ExactMatrix:
    frame = _commuting_frame(d, L, "p", "q")
    U = frame.subs({"p1": "x", "q1": "y", "q7": "z"})
    d.keep("U_7-frame", U)
    U = U.subs({"x": -1})
    K = L[5] @ L[6] @ L[4] @ L[5]
    U5 = K.inverse() @ U @ K
    sol = d.solve_single("U_7 commutes with U_5", extract(U @ U5, U5 @ U), {"y": 0})
    U = U.subs(sol)
    det = U.det()
    d.check("det U_7", "-1 - 2z", det, same_value(det, "-1 - 2*z"))
    result = d.solve("det U_7 = +-1", ConstraintSystem.of([(det - 1) * (det + 1)]))
    roots = sorted(int(b.value("z")) for b in result.branches)
    d.check("z = 0 or z = -1", "[-1, 0]", roots, roots == [-1, 0] and result.status is SolveStatus.FULLY_SOLVED)

    negated = U.subs({"z": 0})
    minus = -identity(DIMENSION)
    breaks = negated == minus and L[5] @ negated @ minus != negated @ minus @ L[6]
    d.check("U_7 = -I breaks L_6 U_7 U_6 = U_7 U_6 L_7 with U_6 = -I", "rejected", breaks, breaks)
    U = d.keep("U_7", U.subs({"z": -1}))
    d.check("U_7 = L_7", "equal", U == L[6], U == L[6])
    return U


def run(d: Derivation, rank: Optional[int] = None) -> None:
    L = generators()
    d.keep("A", ExactMatrix.from_rows(BLOCK_A))
    d.keep("B", ExactMatrix.from_rows(BLOCK_B))
    d.keep("C", ExactMatrix.from_rows(BLOCK_C))
    for i, Li in enumerate(L, start=1):
        d.keep(f"L{i}", Li)
    _coxeter(d, L)
    M = _derive_m(d, L)
    U = _derive_u7(d, L)
    trivial = (L[6] @ M.inverse()).is_identity() and (L[6] @ U).is_identity()
    d.check("d_7 e_3^-1 and d_7 u_7 act trivially", "both identity", trivial, trivial)
    d.conclude("M = U_7 = L_7")
