"""End-to-end runs of each derivation scenario."""

import pytest

from src.algebra import ExactMatrix, identity
from src.homology import rep_table
from src.presentation import d, u
from src.scenarios import run_scenario, scenario_matrix
from src.scenarios.symmetric_eight import generators


def _failed(report):
    return [s.to_dict() for s in report.steps if not s.passed]


def _step(report, prefix):
    return next(s for s in report.steps if s.description.startswith(prefix))


class TestRankTwo:
    """Tests for the GL(2) classification."""

    def test_passes(self):
        """Every step passes."""
        report = run_scenario("rank-two")
        assert report.passed, _failed(report)

    def test_single_eigenvalue_forces_minus_one(self):
        """The nilpotent case forces x = -1 on both eigenvalue branches."""
        step = _step(run_scenario("rank-two"), "L1 conjugate to its inverse")
        assert step.observed == "[(-1, -1), (1, -1)]"

    def test_terminal_cases_square_to_identity(self):
        """f(d1)^2 = I in the three surviving cases."""
        report = run_scenario("rank-two")
        squares = [s for s in report.steps if s.description.startswith("f(d1)^2 = I")]
        assert len(squares) == 4
        assert all(s.passed for s in squares)

    def test_case_three_matrix(self):
        """The triangular case is [[1, 1], [0, -1]]."""
        assert scenario_matrix("rank-two", "case3-L1") == ExactMatrix.from_rows([[1, 1], [0, -1]])


class TestGenusSix:
    """Tests for the dimension-four Jordan-form cases."""

    def test_passes(self):
        """Every step passes."""
        report = run_scenario("genus-six")
        assert report.passed, _failed(report)

    def test_two_block_relation(self):
        """The braid with L4 gives x2 = -(2 x1 + y1 + 2 y2)."""
        step = _step(run_scenario("genus-six"), "braid M L4 M = L4 M L4 in case iiic")
        assert step.observed == "x2 = -2*x1 - y1 - 2*y2"

    def test_conclusions(self):
        """Cases ii and iiia-iiic collapse onto L4 or L5."""
        descriptions = {s.description for s in run_scenario("genus-six").steps}
        assert {"M = L4 at x1 = 1", "M = L4 in case iiia", "M = L4 in case iiib", "M = L5 in case iiic"} <= descriptions


class TestOddGenus:
    """Tests for the image of u_{2r} at odd genus."""

    def test_passes_at_three(self):
        """The default rank r = 3 passes."""
        report = run_scenario("odd-genus")
        assert report.passed, _failed(report)
        assert report.rank == 3

    def test_commutator_positions(self):
        """The commutator lives at (6, 3) and (4, 5) in dimension 6."""
        step = _step(run_scenario("odd-genus"), "[u_{2r}, u_{2r-2}]")
        assert step.observed == "[(4, 5), (6, 3)]"
        assert step.passed

    def test_u_after_last_twist(self):
        """After the relation with d_{2r}, U = diag(I_4, [[x, 0], [y, -x]])."""
        expected = ExactMatrix.from_exprs(
            [
                [1, 0, 0, 0, 0, 0],
                [0, 1, 0, 0, 0, 0],
                [0, 0, 1, 0, 0, 0],
                [0, 0, 0, 1, 0, 0],
                [0, 0, 0, 0, "x", 0],
                [0, 0, 0, 0, "y", "-x"],
            ]
        )
        assert scenario_matrix("odd-genus", "U_{2r}") == expected

    def test_final_tables(self):
        """x = 1 and x = -1 give Psi1(u_6) and Psi2(u_6) at g = 7."""
        assert scenario_matrix("odd-genus", "U_{2r}-Psi1") == rep_table("Psi1", 7)[u(6)]
        assert scenario_matrix("odd-genus", "U_{2r}-Psi2") == rep_table("Psi2", 7)[u(6)]

    @pytest.mark.slow
    def test_passes_at_four(self):
        """r = 4 passes."""
        report = run_scenario("odd-genus", rank=4)
        assert report.passed, _failed(report)
        assert _step(report, "[u_{2r}, u_{2r-2}]").observed == "[(6, 7), (8, 5)]"


class TestEvenGenus:
    """Tests for the twist and crosscap images at even genus."""

    @pytest.mark.slow
    def test_passes_at_four(self):
        """The default rank r = 4 passes."""
        report = run_scenario("even-genus")
        assert report.passed, _failed(report)

    @pytest.mark.slow
    def test_last_twist(self):
        """D_r is the identity with 1, x_r on row 7 and y_r on row 9."""
        expected = identity(9).replace({(6, 7): 1, (6, 8): "x4", (8, 7): "y4"})
        assert scenario_matrix("even-genus", "D_r") == expected

    @pytest.mark.slow
    def test_twist_constraints(self):
        """The braid with B_i and B_{i+1} leaves x1*y1 and v1*v2 - 1."""
        step = _step(run_scenario("even-genus"), "D_1 braids with B_1 and B_2")
        assert step.passed
        assert "x1*y1 = 0" in step.observed
        assert "v1*v2 - 1 = 0" in step.observed

    @pytest.mark.slow
    def test_crosscap_images(self):
        """Both cases end on the Psi1 and Psi2 images of u_9."""
        assert scenario_matrix("even-genus", "U_{2r+1}-case1") == rep_table("Psi1", 10)[u(9)]
        assert scenario_matrix("even-genus", "U_{2r+1}-case2") == rep_table("Psi2", 10)[u(9)]

    def test_passes_at_three(self):
        """r = 3 passes under the single-eigenvalue assumption."""
        report = run_scenario("even-genus", rank=3)
        assert report.passed, _failed(report)
        assert "assuming" in report.conclusion
        assert scenario_matrix("even-genus", "X-case1", rank=3) == ExactMatrix.from_rows(
            [[1, 0, 1], [0, 1, 0], [0, 0, -1]]
        ).replace({(0, 0): "l3", (0, 1): "a", (0, 2): "l3", (1, 1): "l3", (2, 1): "b", (2, 2): "-l3"})
        assert scenario_matrix("even-genus", "D_r", rank=3) == identity(7).replace(
            {(4, 5): 1, (4, 6): "x3", (6, 5): "y3"}
        )
        assert rep_table("Psi1", 8)[d(7)] == identity(7).replace({(4, 5): 1, (6, 5): -2})


class TestSymmetricEight:
    """Tests for the sign-twisted standard representation of S8."""

    def test_passes(self):
        """Every step passes and the conclusion is M = U_7 = L_7."""
        report = run_scenario("symmetric-eight")
        assert report.passed, _failed(report)
        assert report.conclusion == "M = U_7 = L_7"

    def test_c_block(self):
        """C is the displayed 3x3 block."""
        assert scenario_matrix("symmetric-eight", "C") == ExactMatrix.from_rows(
            [[-1, 0, 0], [-1, 1, -1], [0, 0, -1]]
        )

    def test_coxeter_relations(self):
        """L_i are involutions satisfying the braid and far-commutation relations."""
        L = generators()
        for i in range(7):
            assert (L[i] @ L[i]).is_identity()
        for i in range(6):
            assert L[i] @ L[i + 1] @ L[i] == L[i + 1] @ L[i] @ L[i + 1]
        assert L[0].commutes_with(L[6])

    def test_constraint_chain(self):
        """Commuting with L_1..L_5, L_7 gives x_i = x_1, y_i = i y_1, y_6 = x_1 + 6 y_1."""
        M = scenario_matrix("symmetric-eight", "M-frame")
        assert M.entry(3, 5) == 4 * M.entry(0, 5)
        assert str(M.entry(5, 5)) == "x1 + 6*y1"
        assert str(M.entry(6, 6)) == "x1 + 6*y1 - 2*y7"

    def test_rejected_branch(self):
        """y6 = 1 is rejected by the braid with L_6."""
        step = _step(run_scenario("symmetric-eight"), "M L_6 M = L_6 M L_6 at y6 = 1")
        assert step.passed
        assert step.observed.startswith("residual")

    def test_final_matrices(self):
        """M and U_7 both equal L_7."""
        assert scenario_matrix("symmetric-eight", "M") == scenario_matrix("symmetric-eight", "L7")
        assert scenario_matrix("symmetric-eight", "U_7") == generators()[6]
