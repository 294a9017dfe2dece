from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qkzkit.errors import TruncationMismatch
from qkzkit.hseries import HSeries, hseries_to_str, str_to_hseries

D = 4
fracs = st.fractions(min_value=-6, max_value=6, max_denominator=5)
series = st.lists(fracs, min_size=D + 1, max_size=D + 1).map(HSeries)


class TestRing:
    @given(series, series, series)
    @settings(max_examples=100, deadline=None)
    def test_axioms(self, a, b, c):
        zero = HSeries.zero(D)
        one = HSeries.constant(1, D)
        assert a + b == b + a
        assert a * b == b * a
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + zero == a
        assert a * one == a
        assert a - a == zero

    def test_truncation(self):
        h = HSeries.h(D)
        acc = HSeries.constant(1, D)
        for _ in range(D + 1):
            acc = acc * h
        assert acc.is_zero  # h^(D+1) == 0

    def test_mixed_truncation_rejected(self):
        with pytest.raises(TruncationMismatch):
            HSeries.h(3) + HSeries.h(4)


class TestInverseAndExp:
    @given(series.filter(lambda s: s.coeffs[0] != 0))
    @settings(max_examples=60, deadline=None)
    def test_inverse(self, a):
        assert a * a.inv() == HSeries.constant(1, D)

    def test_non_unit_inverse_raises(self):
        with pytest.raises(Exception):
            HSeries.h(D).inv()

    @given(series, series)
    @settings(max_examples=60, deadline=None)
    def test_exp_homomorphism(self, a, b):
        # exp only of h-positive parts
        x, y = a.positive_part(), b.positive_part()
        assert (x + y).exp() == x.exp() * y.exp()

    def test_exp_series(self):
        e = HSeries.h(D).exp()
        assert e.coeffs == (
            Fraction(1), Fraction(1), Fraction(1, 2),
            Fraction(1, 6), Fraction(1, 24),
        )


class TestParts:
    @given(series)
    @settings(max_examples=60, deadline=None)
    def test_decomposition(self, a):
        assert HSeries.constant(a.constant_part, D) + a.positive_part() == a

    @given(series, fracs)
    @settings(max_examples=60, deadline=None)
    def test_scale(self, a, c):
        assert a.scale(c) == a * HSeries.constant(c, D)


class TestSerialization:
    @given(series)
    @settings(max_examples=100, deadline=None)
    def test_round_trip(self, a):
        assert str_to_hseries(hseries_to_str(a), D) == a

    def test_short_input_padded(self):
        assert str_to_hseries("1", D) == HSeries.constant(1, D)
