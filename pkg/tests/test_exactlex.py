"""Scalars, lexicographic vectors, infinity, weight matrices."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lexfan.errors import DimensionError, SchemaError
from lexfan.exactlex import (
    EQ,
    GT,
    INFINITY,
    LT,
    LexVec,
    WeightMatrix,
    lex_cmp,
    lex_max_vertex,
    lex_min_vertex,
    lex_sign,
    mat_vec,
    rat,
    rat_str,
    zero_vec,
)

rationals = st.fractions(
    min_value=-100, max_value=100, max_denominator=12
)
vec3 = st.lists(rationals, min_size=3, max_size=3).map(LexVec)


class TestRat:
    def test_roundtrip_strings(self):
        for s in ["3/4", "-7/2", "0", "12", "-1"]:
            assert rat_str(rat(s)) == s

    def test_int_and_fraction(self):
        assert rat(5) == Fraction(5)
        assert rat(Fraction(2, 6)) == Fraction(1, 3)

    def test_floats_rejected(self):
        with pytest.raises(SchemaError):
            rat(0.5)

    def test_garbage_rejected(self):
        with pytest.raises(SchemaError):
            rat("3.14.15")
        with pytest.raises(SchemaError):
            rat("1/0")
        with pytest.raises(SchemaError):
            rat(None)

    def test_lowest_terms(self):
        x = rat("-6/4")
        assert (x.numerator, x.denominator) == (-3, 2)
        # sign belongs on the numerator; a negative denominator is rejected
        with pytest.raises(SchemaError):
            rat("6/-4")


class TestLexOrder:
    def test_most_significant_first(self):
        # the second coordinate only matters on a first-coordinate tie
        assert lex_cmp(LexVec(["3/2", "1/2"]), LexVec(["3/2", "1"])) == LT
        assert lex_cmp(LexVec([2, -100]), LexVec([1, 100])) == GT
        assert lex_cmp(LexVec([1, 2]), LexVec([1, 2])) == EQ

    def test_python_comparison_matches_lex_cmp(self):
        a, b = LexVec([0, 5]), LexVec([1, -5])
        assert (a < b) and lex_cmp(a, b) == LT

    @settings(max_examples=60, deadline=None)
    @given(vec3, vec3, vec3)
    def test_total_order_transitive(self, a, b, c):
        if lex_cmp(a, b) != GT and lex_cmp(b, c) != GT:
            assert lex_cmp(a, c) != GT

    @settings(max_examples=60, deadline=None)
    @given(vec3, vec3, vec3)
    def test_translation_invariance(self, a, b, c):
        assert lex_cmp(a, b) == lex_cmp(a + c, b + c)

    @settings(max_examples=60, deadline=None)
    @given(vec3, vec3, st.fractions(min_value="1/5", max_value=9, max_denominator=5))
    def test_positive_scaling_invariance(self, a, b, t):
        assert lex_cmp(a, b) == lex_cmp(a * t, b * t)

    @settings(max_examples=40, deadline=None)
    @given(vec3)
    def test_sign_antisymmetry(self, a):
        assert lex_sign(a) == -lex_sign(-a)

    def test_length_mismatch(self):
        with pytest.raises(DimensionError):
            lex_cmp(LexVec([1]), LexVec([1, 2]))
        with pytest.raises(DimensionError):
            LexVec([1]) + LexVec([1, 2])

    def test_min_max_vertex(self):
        vs = [LexVec([1, 5]), LexVec([0, 9]), LexVec([1, 4])]
        assert lex_max_vertex(vs) == LexVec([1, 5])
        assert lex_min_vertex(vs) == LexVec([0, 9])
        with pytest.raises(ValueError):
            lex_max_vertex([])


class TestInfinity:
    def test_top_element(self):
        v = LexVec([10**9, 10**9])
        assert INFINITY > v and not (INFINITY < v)
        assert v < INFINITY
        assert INFINITY == INFINITY and INFINITY >= INFINITY

    def test_absorbing_addition(self):
        assert INFINITY + LexVec([1, 2]) is INFINITY
        assert LexVec([1, 2]) + INFINITY is INFINITY

    def test_positive_scaling_only(self):
        assert 3 * INFINITY is INFINITY
        with pytest.raises(ValueError):
            INFINITY * 0
        with pytest.raises(ValueError):
            INFINITY * -2

    def test_singleton(self):
        from lexfan.exactlex import Infinity

        assert Infinity() is INFINITY


class TestWeightMatrix:
    def test_columns_and_pairing(self, seg_psi):
        assert seg_psi.n_rows == 2 and seg_psi.n_cols == 5
        assert seg_psi.column(2) == LexVec([2, 1])
        # pairing against e_{-1} - 1/2 e_{-2} - 1/2 e_0
        u = [Fraction(-1, 2), 1, Fraction(-1, 2), 0, 0]
        assert mat_vec(seg_psi, u) == LexVec(["-3/2", "1/2"])

    def test_ragged_rejected(self):
        with pytest.raises(DimensionError):
            WeightMatrix(rows=((1, 2), (1,)))

    def test_dimension_mismatch(self, seg_psi):
        with pytest.raises(DimensionError):
            mat_vec(seg_psi, [1, 2, 3])

    def test_zero_vec(self):
        assert zero_vec(3) == LexVec([0, 0, 0])
