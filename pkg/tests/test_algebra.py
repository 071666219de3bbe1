"""Tests for exact matrix arithmetic and the standard matrices."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Poly, Symbol, expand

from src.algebra import (
    A,
    AlgebraError,
    B,
    C,
    CommutantBasis,
    ExactMatrix,
    Ring,
    V,
    V_hat,
    W,
    block_diag,
    build_standard,
    commutant_basis,
    elementary,
    identity,
    intertwiner_basis,
    matrix_op,
    natural_key,
    omega,
    parse_polynomial,
    scalar_window_check,
)

t = Symbol("t")


class TestBuildStandard:
    """Tests for the standard matrix builders."""

    def test_a1_in_dimension_four(self):
        """A(1, 4) should be diag(V, I2)."""
        assert A(1, 4) == block_diag(V(), identity(2))

    def test_identity(self):
        """identity(3) should be I3."""
        assert identity(3).to_dict()["entries"] == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]

    def test_c1_in_dimension_four_is_w(self):
        """C(1, 4) should equal the displayed W."""
        assert C(1, 4).to_dict()["entries"] == [
            [1, 1, 0, -1],
            [0, 1, 0, 0],
            [0, -1, 1, 1],
            [0, 0, 0, 1],
        ]

    def test_elementary(self):
        """elementary(1, 2, 2) should have a single 1 at the top right."""
        assert elementary(1, 2, 2).to_dict()["entries"] == [[0, 1], [0, 0]]

    def test_omega_blocks(self):
        """omega(4) should be (0, I; -I, 0)."""
        assert omega(4).to_dict()["entries"] == [
            [0, 0, 1, 0],
            [0, 0, 0, 1],
            [-1, 0, 0, 0],
            [0, -1, 0, 0],
        ]

    def test_omega_odd_size_rejected(self):
        """omega of odd size should raise."""
        with pytest.raises(AlgebraError):
            omega(3)

    @pytest.mark.parametrize("builder,index,m", [(A, 3, 4), (B, 0, 4), (C, 2, 4)])
    def test_index_out_of_range(self, builder, index, m):
        """Out-of-range indices should raise AlgebraError."""
        with pytest.raises(AlgebraError):
            builder(index, m)

    def test_build_standard_dispatch(self):
        """build_standard should dispatch by kind name."""
        assert build_standard("B", 2, 6) == B(2, 6)
        assert build_standard("Vhat") == V_hat()

    def test_build_standard_unknown_kind(self):
        """Unknown kinds should raise AlgebraError."""
        with pytest.raises(AlgebraError):
            build_standard("Q")

    @pytest.mark.parametrize("m", [4, 6, 8, 10])
    def test_standard_matrices_have_determinant_one(self, m):
        """Every A_i, B_i, C_j should have determinant 1."""
        for i in range(1, m // 2 + 1):
            assert A(i, m).det() == 1
            assert B(i, m).det() == 1
        for j in range(1, m // 2):
            assert C(j, m).det() == 1

    def test_braid_identity_for_v_and_vhat(self):
        """V V-hat V should equal V-hat V V-hat."""
        assert V() @ V_hat() @ V() == V_hat() @ V() @ V_hat()

    @pytest.mark.parametrize("m", [4, 6])
    def test_cayley_hamilton(self, m):
        """Each standard matrix should annihilate its characteristic polynomial."""
        for mat in [A(1, m), B(m // 2, m), C(1, m), omega(m)]:
            assert mat.evaluate_polynomial(mat.charpoly_coeffs()).is_zero()


class TestMatrixOps:
    """Tests for exact matrix operations."""

    def test_inverse_of_v(self):
        """V inverse should be [[1, -1], [0, 1]]."""
        inv = V().inverse()
        assert inv.to_dict()["entries"] == [[1, -1], [0, 1]]
        assert (V() @ inv).is_identity()

    def test_power_of_identity(self):
        """pow(I5, 100) should be I5."""
        assert (identity(5) ** 100).is_identity()

    def test_negative_power(self):
        """Negative powers should use the inverse."""
        assert V() ** -2 == ExactMatrix.from_rows([[1, -2], [0, 1]])

    def test_char_poly_of_vhat(self):
        """char_poly(V-hat) should be (t - 1)^2."""
        assert V_hat().char_poly().as_expr() == expand((t - 1) ** 2)

    def test_non_invertible_integer_matrix(self):
        """A matrix with determinant 2 has no inverse over Z."""
        with pytest.raises(AlgebraError):
            ExactMatrix.from_rows([[2, 0], [0, 1]]).inverse()

    def test_rational_inverse(self):
        """Over Q the same matrix is invertible."""
        m = ExactMatrix.from_rows([[2, 0], [0, 1]], Ring.Q)
        assert m.inverse().to_dict()["entries"] == [["1/2", 0], [0, 1]]

    def test_dimension_mismatch(self):
        """Multiplying incompatible shapes should raise."""
        with pytest.raises(AlgebraError):
            _ = identity(2) @ identity(3)

    def test_negative_power_of_singular_matrix(self):
        """Negative powers of singular matrices should raise."""
        with pytest.raises(AlgebraError):
            _ = ExactMatrix.from_rows([[0, 0], [0, 1]]) ** -1

    def test_polynomial_inverse_with_unit_determinant(self):
        """Unipotent polynomial matrices should invert over PolyQ."""
        m = ExactMatrix.from_rows([[1, "x"], [0, 1]], Ring.POLY)
        inv = m.inverse()
        assert inv == ExactMatrix.from_rows([[1, "-x"], [0, 1]], Ring.POLY)
        assert (m @ inv).is_identity()

    def test_polynomial_inverse_rejects_non_unit(self):
        """A determinant that is not a constant is not a unit."""
        with pytest.raises(AlgebraError):
            ExactMatrix.from_rows([["x", 0], [0, 1]], Ring.POLY).inverse()

    def test_matrix_op_dispatch(self):
        """matrix_op should dispatch named operations."""
        assert matrix_op("det", V()) == 1
        assert matrix_op("mul", V(), V_hat(), V()) == V() @ V_hat() @ V()

    def test_mixed_rings_promote(self):
        """Integer and polynomial matrices should combine over PolyQ."""
        x = ExactMatrix.from_rows([["x", 0], [0, 1]], Ring.POLY)
        assert (x @ V()).ring is Ring.POLY

    @pytest.mark.parametrize("ring", [Ring.Z, Ring.Q, Ring.GF2])
    def test_identity_in_its_own_ring(self, ring):
        """The identity of each ring is recognized as the identity."""
        assert ExactMatrix.identity(4, ring).is_identity()

    def test_gf2_non_identity(self):
        """A GF(2) matrix differing off the diagonal is not the identity."""
        assert not ExactMatrix.from_rows([[1, 1], [0, 1]], Ring.GF2).is_identity()

    def test_polynomial_identity(self):
        """Over PolyQ only the exact identity is recognized."""
        m = ExactMatrix.from_rows([[1, "x"], [0, 1]], Ring.POLY)
        assert not m.is_identity()
        assert (m @ m.inverse()).is_identity()

    def test_subs_lowers_ring(self):
        """Substituting all variables should give an integer matrix."""
        x = ExactMatrix.from_rows([["x", "y"], [0, 1]], Ring.POLY)
        assert x.subs({"x": 1, "y": -1}) == ExactMatrix.from_rows([[1, -1], [0, 1]])
        assert x.subs({"x": 1, "y": -1}).ring is Ring.Z


class TestPolynomials:
    """Tests for polynomial parsing and canonical forms."""

    def test_parse_caret_power(self):
        """'^' should mean exponentiation."""
        assert parse_polynomial("x^2 - 1") == expand(Symbol("x") ** 2 - 1)

    def test_parse_rejects_calls(self):
        """Function calls are not part of the grammar."""
        with pytest.raises(AlgebraError):
            parse_polynomial("__import__('os')")

    def test_natural_order(self):
        """x2 should sort before x10."""
        assert sorted(["x10", "x2", "x1"], key=natural_key) == ["x1", "x2", "x10"]

    @settings(max_examples=30, deadline=None)
    @given(
        st.lists(
            st.tuples(st.integers(-5, 5), st.integers(0, 3), st.integers(0, 3)),
            min_size=1,
            max_size=5,
        )
    )
    def test_add_negate_is_zero(self, terms):
        """p + (-p) should be the zero polynomial."""
        text = " + ".join(f"({c})*x^{i}*y^{j}" for c, i, j in terms)
        p = ExactMatrix.from_rows([[text]], Ring.POLY)
        assert (p + (-p)).is_zero()


class TestInterchange:
    """Tests for the matrix interchange document."""

    def test_rational_entries(self):
        """Rational entries should be written as p/q."""
        m = ExactMatrix.from_rows([[Fraction(1, 3), 2]], Ring.Q)
        assert m.to_dict() == {"ring": "Q", "rows": 1, "cols": 2, "entries": [["1/3", 2]]}

    def test_polynomial_round_trip(self):
        """Polynomial documents should parse back to the same matrix."""
        m = ExactMatrix.from_rows([["x^2 - 1", "1/2*y"], [0, "x*y"]], Ring.POLY)
        assert ExactMatrix.from_dict(m.to_dict()) == m

    def test_gf2_entries_are_bits(self):
        """GF2 matrices should serialize 0/1 entries."""
        m = ExactMatrix.from_rows([[1, 3], [2, 0]], Ring.GF2)
        assert m.to_dict()["entries"] == [[1, 1], [0, 0]]

    def test_shape_mismatch_rejected(self):
        """Declared shape must match the entries."""
        with pytest.raises(AlgebraError):
            ExactMatrix.from_dict({"ring": "Z", "rows": 2, "cols": 2, "entries": [[1, 0]]})

    def test_unknown_ring_rejected(self):
        """Unknown ring tags should raise."""
        with pytest.raises(AlgebraError):
            ExactMatrix.from_dict({"ring": "R", "rows": 1, "cols": 1, "entries": [[1]]})


class TestCommutant:
    """Tests for commutant and intertwiner spaces."""

    def test_generators_in_dimension_four_have_scalar_commutant(self):
        """The commutant of A1, B1, A2, B2, C1 in dim 4 is spanned by I4."""
        space = commutant_basis([A(1, 4), B(1, 4), A(2, 4), B(2, 4), C(1, 4)], 4)
        assert space.rank == 1
        assert space.contains(identity(4))

    def test_empty_constraints(self):
        """With no constraints every 2x2 matrix commutes."""
        assert commutant_basis([], 2).rank == 4

    def test_basis_elements_commute(self):
        """Each returned element commutes with every input."""
        mats = [A(2, 6), B(2, 6)]
        space = commutant_basis(mats, 6)
        for m in space.basis:
            for x in mats:
                assert m.commutes_with(x)

    def test_window_shape_of_commutant(self):
        """The commutant of A2, B2 in dim 6 has a scalar window on rows 3-4."""
        space = commutant_basis([A(2, 6), B(2, 6)], 6)
        assert all(scalar_window_check(m, 2, 2) for m in space.basis)

    def test_intertwiner_of_conjugates(self):
        """M with M V = V-hat' M should exist when the pair is conjugate."""
        p = ExactMatrix.from_rows([[0, 1], [1, 0]])
        target = p @ V() @ p.inverse()
        space = intertwiner_basis([(V(), target)], 2)
        assert space.contains(p)

    def test_invertible_member_from_singular_basis(self):
        """A span of singular matrices can still contain an invertible member."""
        e11 = ExactMatrix.from_rows([[1, 0], [0, 0]])
        e22 = ExactMatrix.from_rows([[0, 0], [0, 1]])
        space = CommutantBasis(dimension=2, basis=(e11, e22))
        member = space.invertible_member()
        assert member is not None
        assert member.det() != 0
        assert space.contains(member)

    def test_invertible_member_skips_roots(self):
        """Grid points where the determinant vanishes are passed over."""
        e11 = ExactMatrix.from_rows([[1, 0], [0, 0]])
        e22 = ExactMatrix.from_rows([[0, 0], [0, 1]])
        # det(c1 e11 + c2 e22 - c3 e11) = c2 (c1 - c3) vanishes at (1, 1, 1)
        space = CommutantBasis(dimension=2, basis=(e11, e22, e11.scale(-1)))
        assert space.invertible_member() == ExactMatrix.from_rows([[-1, 0], [0, 1]])

    def test_no_invertible_member(self):
        """A span of matrices sharing a zero row has no invertible member."""
        e11 = ExactMatrix.from_rows([[1, 0], [0, 0]])
        e12 = ExactMatrix.from_rows([[0, 1], [0, 0]])
        assert CommutantBasis(dimension=2, basis=(e11, e12)).invertible_member() is None
        assert CommutantBasis(dimension=2, basis=()).invertible_member() is None

    def test_commutant_of_diagonal(self):
        """The commutant of diag(1, 2) contains an invertible member."""
        space = commutant_basis([ExactMatrix.from_rows([[1, 0], [0, 2]])], 2)
        assert space.rank == 2
        assert space.invertible_member().det() != 0

    def test_generic_member(self):
        """The generic member should carry one variable per basis element."""
        generic = commutant_basis([V()], 2).generic()
        assert generic.ring is Ring.POLY
        assert len(generic.free_symbols()) == 2


class TestScalarWindow:
    """Tests for the scalar-window shape check."""

    def test_scalar_window_true(self):
        """diag(5, 5, 7, 9) has a scalar window at k=l=1."""
        m = ExactMatrix.from_rows([[5, 0, 0, 0], [0, 5, 0, 0], [0, 0, 7, 0], [0, 0, 0, 9]])
        assert scalar_window_check(m, 1, 1)

    def test_non_scalar_window(self):
        """diag(7, 5, ...) is not scalar on the window."""
        m = ExactMatrix.from_rows([[7, 0, 0, 0], [0, 5, 0, 0], [0, 0, 5, 0], [0, 0, 0, 9]])
        assert not scalar_window_check(m, 1, 1)

    def test_coupling_breaks_window(self):
        """I4 + E13 couples the window to the rest."""
        assert not scalar_window_check(identity(4) + elementary(1, 3, 4), 1, 1)

    def test_invalid_window(self):
        """k > l should raise."""
        with pytest.raises(AlgebraError):
            scalar_window_check(identity(4), 2, 1)

    def test_polynomial_matrix(self):
        """Windows work over polynomial rings."""
        m = ExactMatrix.from_rows([["x", 0, 0], [0, "x", 0], [0, 0, "y"]], Ring.POLY)
        assert scalar_window_check(m, 1, 1)


def test_char_poly_is_poly():
    """char_poly should return a sympy Poly in t."""
    assert isinstance(W().char_poly(), Poly)
