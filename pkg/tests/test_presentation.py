"""Tests for words, relations, abelianization and the dihedral quotient."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.presentation import (
    Family,
    N4Reading,
    PresentationError,
    SurfaceContext,
    SurfaceKind,
    Word,
    X,
    Y,
    abelianize,
    d,
    dihedral_eval,
    e,
    format_word,
    iota_translate,
    nonorientable,
    parse_word,
    relations_for,
    special_word,
    u,
)


def _word(text, genus=5):
    return parse_word(text, nonorientable(genus))


class TestParseWord:
    """Tests for the word grammar."""

    def test_s_word(self):
        """'d1 d2 d3 d4' at g=5 should be the word s."""
        assert _word("d1 d2 d3 d4") == special_word("s", 5)

    def test_cancellation(self):
        """'u3^-1 u3' should reduce to the empty word."""
        assert _word("u3^-1 u3").is_empty

    def test_single_power(self):
        """'e2^2' should be one letter with exponent 2."""
        assert _word("e2^2").letters == ((e(2), 2),)

    def test_explicit_plus_sign(self):
        """'d1^+2' is the same word as 'd1^2'."""
        assert _word("d1^+2") == _word("d1^2")
        assert _word("u4^+1 u4^-1").is_empty

    @pytest.mark.parametrize("token", ["d1^", "d1^+", "d1^++2", "d1^+-2"])
    def test_malformed_exponent(self, token):
        """Exponents need digits after at most one sign."""
        with pytest.raises(PresentationError):
            _word(token)

    def test_merging(self):
        """Adjacent equal generators should merge."""
        assert _word("d1 d1 d2").letters == ((d(1), 2), (d(2), 1))

    def test_nested_cancellation(self):
        """Cancellation should cascade through the stack."""
        assert _word("d1 d2 d2^-1 d1^-1").is_empty

    def test_round_trip(self):
        """Printing and parsing should round-trip."""
        w = _word("d1^-2 u4 e2^3")
        assert parse_word(format_word(w), nonorientable(5)) == w

    def test_syntax_error_has_position(self):
        """Malformed tokens should report their position."""
        with pytest.raises(PresentationError) as info:
            _word("d1 x7")
        assert info.value.position == 3

    def test_index_out_of_range(self):
        """d5 does not exist at g=5."""
        with pytest.raises(PresentationError):
            _word("d5")

    def test_eps_range(self):
        """e3 needs 2*3 <= g."""
        with pytest.raises(PresentationError):
            _word("e3")
        assert _word("e3", genus=6).letters == ((e(3), 1),)


class TestRelationsFor:
    """Tests for relation instances."""

    def test_braid_instance_at_genus_five(self):
        """g=5 should contain d1 d2 d1 = d2 d1 d2."""
        rel = next(r for r in relations_for(5) if r.id == "R4[1]")
        assert format_word(rel.lhs) == "d1 d2 d1"
        assert format_word(rel.rhs) == "d2 d1 d2"

    def test_r5_only_when_2i_less_than_g(self):
        """At g=5 R5 exists for i=2 (4 < 5) and i=1."""
        ids = {r.id for r in relations_for(5) if r.family == "R5"}
        assert ids == {"R5[1]", "R5[2]"}
        rel = next(r for r in relations_for(5) if r.id == "R5[2]")
        assert format_word(rel.lhs) == "e2 d4 e2"

    def test_no_r5_at_2i_equal_g(self):
        """At g=6 there is no R5 instance for i=3."""
        assert "R5[3]" not in {r.id for r in relations_for(6)}

    def test_r1_empty_at_genus_three(self):
        """g=3 has no R1 instance."""
        assert [r for r in relations_for(3) if r.family == "R1"] == []

    def test_genus_two_rejected(self):
        """g < 3 should raise."""
        with pytest.raises(PresentationError):
            relations_for(2)

    def test_genus_four_extras(self):
        """g=4 should carry the extra relator families."""
        families = {r.family for r in relations_for(4)}
        assert {"N4A", "N4B", "N4C"} <= families

    def test_literal_reading(self):
        """The literal reading uses u1 in both instances."""
        literal = [r for r in relations_for(4, reading=N4Reading.LITERAL) if r.family == "N4A"]
        assert format_word(literal[1].lhs) == "d3 u1 u3"
        corrected = [r for r in relations_for(4) if r.family == "N4A"]
        assert format_word(corrected[1].lhs) == "d3 u2 u3"

    def test_shift_relations(self):
        """The shift family should have g-2 instances."""
        shift = [r for r in relations_for(6, include_shift=True) if r.family == "SHIFT"]
        assert len(shift) == 4

    def test_relation_ids_are_unique(self):
        """Relation ids should not repeat."""
        rels = relations_for(7, include_shift=True)
        assert len({r.id for r in rels}) == len(rels)


class TestSpecialWord:
    """Tests for the word s."""

    def test_s_at_three(self):
        """s at g=3 is d1 d2."""
        assert format_word(special_word("s", 3)) == "d1 d2"

    def test_s_in_commutator_for_large_genus(self):
        """s should abelianize to 0 at g=7."""
        assert abelianize(special_word("s", 7)).is_zero

    def test_unknown_name(self):
        """Only s is defined."""
        with pytest.raises(PresentationError):
            special_word("t", 5)


class TestAbelianize:
    """Tests for the abelianization map."""

    def test_twists_vanish_for_large_genus(self):
        """d1 at g=7 should map to 0."""
        assert abelianize(_word("d1", 7)).is_zero

    def test_two_u_letters(self):
        """u3 u5 at g=8 should map to 0."""
        assert abelianize(_word("u3 u5", 8)).is_zero

    def test_mixed_word_at_genus_five(self):
        """d2 e2 u1 at g=5 should have d1-coordinate 0 and u1-coordinate 1."""
        cls = abelianize(_word("d2 e2 u1"))
        assert cls.to_dict() == {"d1": 0, "u1": 1}

    def test_genus_four_keeps_e2(self):
        """At g=4 e2 has its own coordinate."""
        cls = abelianize(_word("e2 d3", 4))
        assert cls.to_dict() == {"d1": 1, "e2": 1, "u1": 0}

    @pytest.mark.parametrize("genus", [3, 4, 5, 6, 7, 9])
    def test_kills_every_relator(self, genus):
        """Every relator should abelianize to 0."""
        for rel in relations_for(genus, include_shift=True):
            assert abelianize(rel.relator).is_zero, rel.id


class TestDihedral:
    """Tests for the genus-four dihedral quotient."""

    def test_e2_is_xy(self):
        """e2 should map to xy of infinite order."""
        image = dihedral_eval(_word("e2", 4))
        assert image == X * Y
        assert image.order is None

    def test_empty_word(self):
        """The empty word maps to the identity."""
        assert dihedral_eval(Word.empty(nonorientable(4))).is_identity

    def test_two_u_letters(self):
        """u1 u2 maps to y y = 1."""
        assert dihedral_eval(_word("u1 u2", 4)).is_identity

    def test_involutions(self):
        """x and y should be involutions."""
        assert (X * X).is_identity
        assert (Y * Y).is_identity

    def test_wrong_genus(self):
        """Words off N_4 are rejected."""
        with pytest.raises(PresentationError):
            dihedral_eval(_word("d1", 5))

    @pytest.mark.parametrize("reading", list(N4Reading))
    def test_kills_presentation(self, reading):
        """Every genus-four relator maps to the identity under either reading."""
        for rel in relations_for(4, reading=reading):
            assert dihedral_eval(rel.relator).is_identity, rel.id

    def test_xy_has_infinite_order(self):
        """(xy)^n is never the identity for 1 <= n <= 10^4."""
        xy = X * Y
        power = xy
        for _ in range(1, 10_001):
            assert not power.is_identity
            power = power * xy

    @settings(max_examples=50, deadline=None)
    @given(
        st.lists(st.sampled_from(["d1", "d2", "d3", "e1", "e2", "u1", "u2", "u3"]), max_size=8),
        st.lists(st.sampled_from(["d1", "d2", "d3", "e1", "e2", "u1", "u2", "u3"]), max_size=8),
        st.lists(st.integers(-3, 3), min_size=16, max_size=16),
    )
    def test_homomorphism(self, first, second, exps):
        """dihedral_eval(w1 w2) should equal dihedral_eval(w1) dihedral_eval(w2)."""
        w1 = _word(" ".join(f"{t}^{k}" for t, k in zip(first, exps)), 4)
        w2 = _word(" ".join(f"{t}^{k}" for t, k in zip(second, exps[8:])), 4)
        assert dihedral_eval(w1 * w2) == dihedral_eval(w1) * dihedral_eval(w2)


class TestIota:
    """Tests for the subsurface translation."""

    def _sub(self, text, genus):
        return parse_word(text, SurfaceContext(genus, 0, SurfaceKind.SUBSURFACE))

    def test_beta(self):
        """b1 at g=5 maps to d2."""
        assert format_word(iota_translate(self._sub("b1", 5))) == "d2"

    def test_empty(self):
        """The empty word maps to the empty word."""
        assert iota_translate(self._sub("", 5)).is_empty

    def test_gamma_and_alpha(self):
        """g1 a2^-1 at g=6 maps to d3 e2^-1."""
        assert format_word(iota_translate(self._sub("g1 a2^-1", 6))) == "d3 e2^-1"

    def test_out_of_range(self):
        """b3 does not live on S' at g=6."""
        with pytest.raises(PresentationError):
            self._sub("b3", 6)

    def test_rejects_other_contexts(self):
        """Words on N_g cannot be translated."""
        with pytest.raises(PresentationError):
            iota_translate(_word("d1"))


def test_family_letters():
    """Family values are the grammar atoms."""
    assert [f.value for f in Family] == ["d", "e", "u", "a", "b", "g"]


def test_generator_str():
    """Generators print as atom plus index."""
    assert str(u(3)) == "u3"
