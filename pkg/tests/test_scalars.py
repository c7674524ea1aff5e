from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from totalpos import (
    binomial,
    format_rational,
    parse_rational,
    pochhammer,
    saalschuetz_check,
)


class TestBinomial:
    def test_matches_comb_for_nonnegative_arguments(self):
        for n in range(0, 12):
            for k in range(0, 12):
                assert binomial(n, k) == math.comb(n, k)

    def test_vanishes_above_the_diagonal(self):
        assert binomial(3, 5) == 0
        assert binomial(0, 1) == 0

    def test_negative_upper_argument_uses_falling_factorial(self):
        # binomial(n, k) = n(n-1)...(n-k+1)/k! for any integer n.
        assert binomial(-1, 2) == 1
        assert binomial(-1, 3) == -1
        assert binomial(-2, 2) == 3
        assert binomial(-3, 1) == -3

    def test_negative_lower_argument_gives_zero(self):
        assert binomial(3, -1) == 0
        assert binomial(-2, -1) == 0

    @given(st.integers(-20, 20), st.integers(1, 12))
    def test_pascal_recurrence(self, n, k):
        assert binomial(n, k) == binomial(n - 1, k) + binomial(n - 1, k - 1)

    @given(st.integers(-20, 20), st.integers(1, 12))
    def test_falling_factorial_quotient(self, n, k):
        prod = 1
        for step in range(k):
            prod *= n - step
        assert binomial(n, k) * math.factorial(k) == prod


class TestPochhammer:
    def test_small_integer_values(self):
        assert pochhammer(3, 0) == 1
        assert pochhammer(3, 1) == 3
        assert pochhammer(3, 2) == 12
        assert pochhammer(1, 4) == 24

    def test_rational_base_stays_exact(self):
        assert pochhammer(Fraction(1, 2), 3) == Fraction(15, 8)

    def test_negative_length_rejected(self):
        with pytest.raises(ValueError):
            pochhammer(2, -1)

    @given(st.integers(-8, 8), st.integers(0, 6), st.integers(0, 6))
    def test_concatenation_rule(self, z, s, r):
        # (z)_{s+r} = (z)_s * (z+s)_r
        assert pochhammer(z, s + r) == pochhammer(z, s) * pochhammer(z + s, r)


class TestSaalschuetz:
    def test_unit_example(self):
        chk = saalschuetz_check(1, 1, 1)
        assert chk.holds
        assert chk.lhs == chk.rhs == 4

    def test_asymmetric_example(self):
        chk = saalschuetz_check(2, 1, 1)
        assert chk.holds
        assert chk.lhs == chk.rhs == 9

    def test_small_grid_holds(self):
        for a in range(1, 6):
            for b in range(1, 6):
                for k in range(1, 6):
                    assert saalschuetz_check(a, b, k).holds

    def test_sides_are_exact_fractions(self):
        chk = saalschuetz_check(3, 2, 4)
        assert isinstance(chk.lhs, Fraction)
        assert isinstance(chk.rhs, Fraction)


class TestRationalText:
    def test_integers_print_without_denominator(self):
        assert format_rational(Fraction(4, 2)) == "2"
        assert format_rational(3) == "3"

    def test_fractions_print_in_lowest_terms(self):
        assert format_rational(Fraction(-3, 7)) == "-3/7"

    def test_parse_reports_canonical_form(self):
        assert parse_rational("-3") == (Fraction(-3), True)
        assert parse_rational("1/2") == (Fraction(1, 2), True)
        assert parse_rational("2/4") == (Fraction(1, 2), False)

    def test_parse_rejects_garbage(self):
        for text in ("a/b", "", "1/0", "1.5.2"):
            with pytest.raises(ValueError):
                parse_rational(text)

    @given(st.fractions(max_denominator=1000))
    def test_format_parse_round_trip(self, x):
        text = format_rational(x)
        value, canonical = parse_rational(text)
        assert value == x
        assert canonical
