"""Four-dimensional images for a genus-six surface.

Walks the Jordan-form cases of the image M of d1 and shows that the
non-involutive ones collapse onto the image of another generator, so the
image of d1 is an involution whenever the homomorphism is nontrivial.
"""

import logging
from typing import Optional

from src.algebra import ExactMatrix
from src.constraints import extract
from src.scenarios.base import Derivation, poly_matrix

logger = logging.getLogger(__name__)

SCENARIO_ID = "genus-six"


def _braid_system(first: ExactMatrix, second: ExactMatrix, units=()):
    return extract(first @ second @ first, second @ first @ second, units=units)


def _commuting_jordan_block(d: Derivation) -> None:
    L1 = d.keep("L1-k3", poly_matrix([["l", 0, 0, 0], [0, "l", 0, 0], [0, 0, "l", 1], [0, 0, 0, "l"]]))
    L2 = d.keep("L2-k3", poly_matrix([["l", 0, 0, "x"], [0, "l", 0, "y"], [0, 0, "l", "z"], [0, 0, 0, "l"]]))
    commute = L1.commutes_with(L2)
    d.check("a rank-one nilpotent part commutes with the adjacent twist", "L1 L2 = L2 L1", commute, commute)


def _jordan_forms(d: Derivation) -> None:
    forms = {
        "i": poly_matrix([[-1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]),
        "ii": poly_matrix([[-1, 0, 0, 0], [0, 1, 1, 0], [0, 0, 1, 1], [0, 0, 0, 1]]),
        "iii": poly_matrix([[-1, 0, 0, 0], [0, 1, 1, 0], [0, 0, 1, 0], [0, 0, 0, 1]]),
    }
    for name, form in forms.items():
        d.keep(f"jordan-{name}", form)
    squares = {name: (form @ form).is_identity() for name, form in forms.items()}
    d.check(
        "only the diagonal Jordan form is an involution",
        "{'i': True, 'ii': False, 'iii': False}",
        squares,
        squares == {"i": True, "ii": False, "iii": False},
    )


def _upper_triangular_case(d: Derivation) -> None:
    M = d.keep("M-ii", poly_matrix(
        [["x1", 0, 0, 0], [0, "x2", "v1", "v2"], [0, 0, "x3", "v3"], [0, 0, 0, "x4"]]
    ))
    L4 = d.keep("L4-ii", poly_matrix(
        [["y1", 0, 0, 0], [0, "y2", "w1", "w2"], [0, 0, "y3", "w3"], [0, 0, 0, "y4"]]
    ))
    diagonal = [f"x{i}" for i in range(1, 5)] + [f"y{i}" for i in range(1, 5)]
    d.solve_each(
        "braid M L4 M = L4 M L4 in upper-triangular form",
        _braid_system(M, L4, units=diagonal),
        {f"y{i}": f"x{i}" for i in range(1, 5)},
        eliminate_first=[f"y{i}" for i in range(1, 5)],
    )
    for sign in (1, -1):
        eigen = {"x1": sign, "x2": -sign, "x3": 1, "x4": 1}
        Ms = M.subs(eigen)
        Ls = L4.subs({f"y{i}": v for i, v in enumerate(eigen.values(), start=1)})
        sol = d.solve_single(
            f"braid at eigenvalues ({sign}, {-sign}, 1, 1)",
            _braid_system(Ms, Ls),
            {"w1": "v1", "w2": "v2", "w3": "v3"},
            eliminate_first=["w1", "w2", "w3"],
        )
        same = Ms == Ls.subs(sol)
        d.check(f"M = L4 at x1 = {sign}", "M = L4", same, same)


def _single_block(d: Derivation, label: str, diagonal: list[int]) -> None:
    M = poly_matrix(
        [[diagonal[0], 0, 0, 0], [0, diagonal[1], 0, "x1"], [0, 0, diagonal[2], "x2"], [0, 0, 0, diagonal[3]]]
    )
    L4 = poly_matrix(
        [[diagonal[0], 0, 0, 0], [0, diagonal[1], 0, "y1"], [0, 0, diagonal[2], "y2"], [0, 0, 0, diagonal[3]]]
    )
    d.keep(f"M-{label}", M)
    sol = d.solve_single(
        f"braid M L4 M = L4 M L4 in case {label}",
        _braid_system(M, L4),
        {"y1": "x1", "y2": "x2"},
        eliminate_first=["y1", "y2"],
    )
    same = M == L4.subs(sol)
    d.check(f"M = L4 in case {label}", "M = L4", same, same)


def _two_blocks(d: Derivation) -> None:
    M = d.keep("M-iiic", poly_matrix([[1, 0, 0, 0], [0, 1, 1, "x1"], [0, 0, -1, "x2"], [0, 0, 0, 1]]))
    L4 = d.keep("L4-iiic", poly_matrix([[1, 0, 0, 0], [0, -1, 0, "y1"], [0, 1, 1, "y2"], [0, 0, 0, 1]]))
    L5 = d.keep("L5-iiic", poly_matrix([[1, 0, 0, 0], [0, 1, 1, "z1"], [0, 0, -1, "z2"], [0, 0, 0, 1]]))
    first = d.solve_single(
        "braid M L4 M = L4 M L4 in case iiic",
        _braid_system(M, L4),
        {"x2": "-2*x1 - y1 - 2*y2"},
        eliminate_first=["x2"],
    )
    second = d.solve_single(
        "braid L5 L4 L5 = L4 L5 L4 in case iiic",
        _braid_system(L5, L4),
        {"z2": "-2*z1 - y1 - 2*y2"},
        eliminate_first=["z2"],
    )
    M, L5 = M.subs(first), L5.subs(second)
    third = d.solve_single(
        "M L5 = L5 M in case iiic",
        extract(M @ L5, L5 @ M),
        {"z1": "x1"},
        eliminate_first=["z1"],
    )
    same = M == L5.subs(third)
    d.check("M = L5 in case iiic", "M = L5", same, same)


def run(d: Derivation, rank: Optional[int] = None) -> None:
    _commuting_jordan_block(d)
    _jordan_forms(d)
    _upper_triangular_case(d)
    _single_block(d, "iiia", [-1, 1, 1, 1])
    _single_block(d, "iiib", [1, -1, 1, 1])
    _two_blocks(d)
    d.conclude("every non-involutive Jordan form forces M to equal the image of another twist")
