from fractions import Fraction

import mpmath as mp
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qconv import algebra
from qconv.algebra import (
    IntPoly,
    RationalFunc,
    ZPoly,
    ZSeries,
    parse_poly,
    parse_rational,
    poly_exact_div,
    poly_gcd,
    series_from_rational,
)

coeff = st.integers(min_value=-(10**30), max_value=10**30)
small = st.integers(min_value=-50, max_value=50)
polys = st.lists(coeff, max_size=40).map(IntPoly)
small_polys = st.lists(small, max_size=8).map(IntPoly)
nonzero_small = small_polys.filter(lambda p: not p.is_zero())


def q(k, c=1):
    return IntPoly.monomial(k, c)


class TestIntPoly:
    def test_normalises_trailing_zeros(self):
        p = IntPoly([1, 2, 0, 0])
        assert p.coeffs == (1, 2)
        assert IntPoly().degree == -1
        assert IntPoly([0, 0]).is_zero()

    def test_format(self):
        assert str(IntPoly([1, 0, 0, -1, 0, -1, 0, 0, 1])) == "1 - q^3 - q^5 + q^8"
        assert str(q(3, 2)) == "2*q^3"
        assert str(IntPoly()) == "0"
        assert str(IntPoly([-1])) == "-1"

    def test_parse_round_trip(self):
        for text in ["1 - q^3 - q^5 + q^8", "2*q^3", "-q + 7*q^11", "0"]:
            assert str(parse_poly(text)) == text

    def test_parse_loose(self):
        assert parse_poly("2q^14 + q") == q(14, 2) + q(1)
        assert parse_poly("-1+q^2") == IntPoly([-1, 0, 1])
        with pytest.raises(ValueError):
            parse_poly("q^^2")
        with pytest.raises(ValueError):
            parse_poly("")

    def test_valuation_and_content(self):
        p = IntPoly([0, 0, 6, -9])
        assert p.valuation() == 2
        assert p.content() == 3
        assert p.primitive() == IntPoly([0, 0, -2, 3])

    def test_eval(self):
        p = IntPoly([1, -2, 3])
        assert p(2) == 9
        assert p(Fraction(1, 2)) == Fraction(3, 4)

    def test_subs(self):
        p = IntPoly([1, 1])
        assert p.subs_power(3) == IntPoly([1, 0, 0, 1])
        assert IntPoly([1, 2, 3]).subs_neg() == IntPoly([1, -2, 3])

    def test_negative_shift_rejected(self):
        with pytest.raises(ValueError):
            q(1).shift(-1)

    def test_big_coefficients(self):
        big = 10**40 + 7
        p = IntPoly([big, -big, 1])
        assert (p * p)[0] == big * big

    @settings(max_examples=60, deadline=None)
    @given(st.lists(coeff, min_size=20, max_size=60), st.lists(coeff, min_size=20, max_size=60))
    def test_kronecker_matches_schoolbook(self, a, b):
        a = algebra._trim(a)
        b = algebra._trim(b)
        if not a or not b:
            return
        assert algebra._mul_kronecker(a, b) == algebra._mul_schoolbook(a, b)

    @given(polys, polys, polys)
    def test_ring_axioms(self, a, b, c):
        assert a + b == b + a
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a - a == IntPoly()
        assert a * 1 == a

    @given(polys, polys)
    def test_degree_of_product(self, a, b):
        if a.is_zero() or b.is_zero():
            assert (a * b).is_zero()
        else:
            assert (a * b).degree == a.degree + b.degree


class TestDivisionAndGcd:
    def test_exact_division(self):
        a = IntPoly([1, 0, -1])
        assert poly_exact_div(a, IntPoly([1, 1])) == IntPoly([1, -1])
        with pytest.raises(ValueError):
            poly_exact_div(IntPoly([1, 0, 1]), IntPoly([1, 1]))
        with pytest.raises(ZeroDivisionError):
            poly_exact_div(a, IntPoly())

    @settings(max_examples=80, deadline=None)
    @given(nonzero_small, nonzero_small, nonzero_small)
    def test_gcd_divides(self, a, b, g):
        d = poly_gcd(a * g, b * g)
        poly_exact_div(a * g, d)
        poly_exact_div(b * g, d)
        poly_exact_div(d, g.primitive())

    def test_gcd_strips_q_powers(self):
        assert poly_gcd(q(5) * IntPoly([1, 1]), q(3) * IntPoly([1, -1])) == q(3)


class TestRationalFunc:
    def test_canonical_form(self):
        r = RationalFunc(IntPoly([-2, 0, 2]), IntPoly([-4, -4]))
        assert r.num == IntPoly([1, -1])
        assert r.den == IntPoly([2])
        assert str(r) == "(1 - q)/(2)"

    def test_positive_leading_denominator(self):
        r = RationalFunc(IntPoly([1]), IntPoly([1, -1]))
        assert r.den.lead > 0
        assert r == RationalFunc(IntPoly([-1]), IntPoly([-1, 1]))

    def test_zero_denominator(self):
        with pytest.raises(ZeroDivisionError):
            RationalFunc(IntPoly([1]), IntPoly())

    def test_fraction_interop(self):
        r = RationalFunc(Fraction(1, 2)) * q(1)
        assert r(2) == 1
        assert r * 2 == q(1)

    def test_pole(self):
        r = RationalFunc(1, IntPoly([-1, 1]))
        with pytest.raises(ZeroDivisionError):
            r(1)

    def test_parse(self):
        r = parse_rational("(1 - q)/(2)")
        assert r == RationalFunc(IntPoly([1, -1]), 2)
        assert parse_rational(str(r)) == r
        assert parse_rational("q^2") == q(2)

    @settings(max_examples=50, deadline=None)
    @given(small_polys, nonzero_small, small_polys, nonzero_small)
    def test_field_axioms(self, a, b, c, d):
        x, y = RationalFunc(a, b), RationalFunc(c, d)
        assert x + y == y + x
        assert (x + y) - y == x
        assert x * y == y * x
        if not y.is_zero():
            assert (x / y) * y == x

    @settings(max_examples=50, deadline=None)
    @given(small_polys, nonzero_small)
    def test_unique_representation(self, a, b):
        r = RationalFunc(a, b)
        s = RationalFunc(a * IntPoly([3, 1]), b * IntPoly([3, 1]))
        assert r.num == s.num and r.den == s.den
        assert hash(r) == hash(s)


class TestZPolyAndSeries:
    def test_zpoly_format(self):
        zp = ZPoly([IntPoly([1]), -q(3) - q(5), q(6)])
        assert algebra.format_zpoly(zp.coeffs) == "1 + (-q^3 - q^5)*z + q^6*z^2"

    def test_zpoly_substitution(self):
        zp = ZPoly([IntPoly([1]), IntPoly([0, -1])])
        assert zp(q(2)) == IntPoly([1, 0, 0, -1])

    def test_geometric_series(self):
        s = series_from_rational(ZPoly([1]), ZPoly([1, -1]), 5)
        assert list(s) == [1] * 6

    def test_no_series_at_origin(self):
        with pytest.raises(ZeroDivisionError):
            series_from_rational(ZPoly([1]), ZPoly([0, 1]), 3)

    def test_order_mismatch(self):
        with pytest.raises(ValueError):
            ZSeries([1], 3) + ZSeries([1], 4)

    @settings(max_examples=60, deadline=None)
    @given(st.sampled_from([1, -1]), st.lists(small, max_size=11))
    def test_inverse(self, c0, rest):
        s = ZSeries([c0] + rest, 11)
        one = s * s.inverse()
        assert list(one) == [1] + [0] * 11

    @settings(max_examples=40, deadline=None)
    @given(st.lists(small, min_size=1, max_size=10), st.integers(0, 4))
    def test_power(self, cs, p):
        s = ZSeries(cs, 9)
        expected = ZSeries([1], 9)
        for _ in range(p):
            expected = expected * s
        assert s**p == expected

    def test_derivative(self):
        s = ZSeries([1, 2, 3, 4], 3)
        assert list(s.derivative()) == [2, 6, 12]


def test_float_eval():
    p = IntPoly([1, -3, 0, 2])
    with mp.workdps(40):
        x = mp.mpf("0.37")
        assert abs(algebra.poly_eval_float(p, x) - (1 - 3 * x + 2 * x**3)) < mp.mpf(10) ** -38
    assert algebra.poly_eval_rational(p, Fraction(1, 3)) == Fraction(2, 27)
