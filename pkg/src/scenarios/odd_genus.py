"""Images of the crosscap generators for odd genus g = 2r + 1.

Starting from the standard twist images in dimension 2r, the image of
u_{2r} is pinned down by its commutant, the relation with d_{2r}, the
commutation with its conjugate u_{2r-2} and the braid with u_{2r-1}. The two
surviving solutions are the Psi1 and Psi2 tables.
"""

import logging
from typing import Optional

from sympy import Symbol, rem

from src.algebra import A, B, C, ExactMatrix, commutant_basis, elementary, scalar_window_check
from src.constraints import SolveStatus, extract, nonzero_entries
from src.homology import rep_table
from src.presentation import d as twist_d
from src.presentation import e as twist_e
from src.presentation import u as crosscap
from src.scenarios.base import Derivation, embed, poly_matrix

logger = logging.getLogger(__name__)

SCENARIO_ID = "odd-genus"
RANKS = (3, 4, 5)
DEFAULT_RANK = 3


def _twist_images(r: int) -> dict:
    m = 2 * r
    images = {twist_d(1): A(1, m)}
    for i in range(1, r + 1):
        images[twist_e(i)] = A(i, m)
        images[twist_d(2 * i)] = B(i, m)
    for j in range(1, r):
        images[twist_d(2 * j + 1)] = C(j, m)
    return images


def _commutant(d: Derivation, r: int) -> None:
    m = 2 * r
    fixed = [A(i, m) for i in range(1, r)] + [B(i, m) for i in range(1, r)] + [C(j, m) for j in range(1, r - 1)]
    space = commutant_basis(fixed, m)
    scalar = all(scalar_window_check(member, 1, r - 1) for member in space.basis)
    d.check(
        "the commutant of A_i, B_i (i < r) and C_j (j < r - 1)",
        "dimension 5, scalar on the first 2r - 2 coordinates",
        f"dimension {space.rank}",
        space.rank == 5 and scalar,
    )
    g = 2 * r + 1
    inside = all(space.contains(rep_table(name, g)[crosscap(2 * r)]) for name in ("Psi1", "Psi2"))
    d.check("Psi1(u_{2r}) and Psi2(u_{2r}) lie in the commutant", "both contained", inside, inside)


def _with_last_twist(d: Derivation, r: int) -> ExactMatrix:
    m = 2 * r
    generic = d.keep("U_{2r}-generic", embed(poly_matrix([["x", "b"], ["y", "c"]]), m - 1, m))
    sol = d.solve_single(
        "d_{2r} u_{2r} d_{2r} = u_{2r}",
        extract(B(r, m) @ generic @ B(r, m), generic),
        {"b": 0, "c": "-x"},
        eliminate_first=["b", "c"],
    )
    return d.keep("U_{2r}", generic.subs(sol))


def _commutator(d: Derivation, r: int, U: ExactMatrix) -> list:
    m = 2 * r
    K = C(r - 1, m) @ B(r, m) @ B(r - 1, m) @ C(r - 1, m)
    lower = d.keep("U_{2r-2}", K.inverse() @ U @ K)
    commutator = U @ lower - lower @ U
    x = Symbol("x")
    expected = (elementary(m, m - 3, m) + elementary(m - 2, m - 1, m)).scale(1 - x**2)
    positions = sorted(nonzero_entries(commutator, ExactMatrix.zeros(m, m)))
    d.check(
        "[u_{2r}, u_{2r-2}] is (1 - x^2)(E_{2r,2r-3} + E_{2r-2,2r-1})",
        f"entries at {[(m, m - 3), (m - 2, m - 1)]}",
        positions,
        commutator == expected,
    )
    result = d.solve("u_{2r} commutes with u_{2r-2}", extract(U @ lower, lower @ U))
    values = sorted(int(b.value("x")) for b in result.branches)
    d.check(
        "x^2 = 1",
        "[-1, 1]",
        values,
        values == [-1, 1] and result.status is SolveStatus.FULLY_SOLVED,
    )
    return values


def _braid_branch(d: Derivation, r: int, U: ExactMatrix, sign: int) -> None:
    m = 2 * r
    g = m + 1
    U = U.subs({"x": sign})
    d.check(f"u_{{2r}}^2 = 1 at x = {sign}", "U^2 = I", (U @ U).is_identity(), (U @ U).is_identity())

    K = C(r - 1, m) @ B(r, m)
    middle = K.inverse() @ U @ K
    defect = U @ middle @ U - middle @ U @ middle
    y = Symbol("y")
    entries = nonzero_entries(defect, ExactMatrix.zeros(m, m))
    divisible = bool(entries) and all(rem(v, (y - sign) ** 2, y) == 0 for v in entries.values())
    d.check(
        f"the braid defect of u_{{2r}} and u_{{2r-1}} at x = {sign}",
        "every entry divisible by (y - x)^2",
        f"{len(entries)} nonzero entries",
        divisible,
    )
    sol = d.solve_single(
        f"u_{{2r}} u_{{2r-1}} u_{{2r}} = u_{{2r-1}} u_{{2r}} u_{{2r-1}} at x = {sign}",
        extract(U @ middle @ U, middle @ U @ middle),
        {"y": sign},
    )

    name = "Psi1" if sign == 1 else "Psi2"
    table = rep_table(name, g)
    final = d.keep(f"U_{{2r}}-{name}", U.subs(sol))
    images = _twist_images(r)
    images[crosscap(2 * r)] = final
    images[crosscap(2 * r - 1)] = middle.subs(sol)
    lowered = C(r - 1, m) @ B(r, m) @ B(r - 1, m) @ C(r - 1, m)
    images[crosscap(2 * r - 2)] = lowered.inverse() @ final @ lowered
    mismatched = [str(gen) for gen, image in images.items() if image != table[gen]]
    d.check(
        f"x = {sign} reproduces {name} at g = {g}",
        "no mismatched generator",
        mismatched or "none",
        not mismatched,
    )


def run(d: Derivation, rank: Optional[int] = DEFAULT_RANK) -> None:
    r = rank or DEFAULT_RANK
    _commutant(d, r)
    U = _with_last_twist(d, r)
    for sign in _commutator(d, r, U):
        _braid_branch(d, r, U, sign)
    d.conclude(f"at g = {2 * r + 1} the image of u_{{2r}} is Psi1(u_{{2r}}) for x = 1 and Psi2(u_{{2r}}) for x = -1")
