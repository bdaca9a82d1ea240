from fractions import Fraction
import pickle

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from app.core.exactmath import (
	X,
	Polynomial,
	binomial,
	elementary_symmetric_all,
	format_rational,
	multinomial,
	parse_rational,
	parse_rational_list,
	pochhammer,
	pochhammer_value,
	poly_gcd,
	poly_squarefree,
	product_of_linear,
	stirling_first_unsigned,
	to_rational,
)

small_rationals = st.fractions(min_value=-4, max_value=4, max_denominator=12)


def test_parse_and_format_rational():
	"""Rationals travel as "p/q" strings; denominator 1 is dropped"""
	assert parse_rational("3/6") == Fraction(1, 2)
	assert parse_rational(" -7 ") == Fraction(-7)
	assert format_rational(Fraction(4, 2)) == "2"
	assert format_rational(Fraction(-3, 4)) == "-3/4"
	assert parse_rational_list("1,2,3/2") == [Fraction(1), Fraction(2), Fraction(3, 2)]


def test_floats_and_bad_literals_rejected():
	with pytest.raises(ValueError):
		to_rational(0.5)
	with pytest.raises(ValueError):
		to_rational(True)
	with pytest.raises(ValueError):
		parse_rational("1/0")
	with pytest.raises(ValueError):
		parse_rational("abc")


def test_polynomial_normalizes_trailing_zeros():
	p = Polynomial([1, 2, 0, 0])
	assert p.degree == 1
	assert p == Polynomial([1, 2])
	assert Polynomial().degree is None
	assert Polynomial([0, 0]).is_zero


def test_polynomial_format():
	assert Polynomial([18, 18]).format() == "18 + 18x"
	assert Polynomial([0, -1, Fraction(1, 2)]).format() == "-x + (1/2)x^2"
	assert Polynomial().format() == "0"


def test_polynomial_arithmetic():
	p = Polynomial([1, 1])
	assert p * p == Polynomial([1, 2, 1])
	assert (p * p).evaluate(3) == 16
	assert (p * p).derivative() == Polynomial([2, 2])
	assert (X * X).shift(1) == Polynomial([1, 2, 1])
	quotient, remainder = Polynomial([1, 0, 1]).divmod(Polynomial([1, 1]))
	assert quotient == Polynomial([-1, 1])
	assert remainder == Polynomial([2])


def test_exact_div_requires_divisibility():
	assert Polynomial([2, 3, 1]).exact_div(Polynomial([1, 1])) == Polynomial([2, 1])
	with pytest.raises(ValueError):
		Polynomial([1, 0, 1]).exact_div(Polynomial([1, 1]))


def test_gcd_and_squarefree():
	square = Polynomial([1, 1]) * Polynomial([1, 1]) * Polynomial([2, 1])
	assert poly_gcd(square, square.derivative()) == Polynomial([1, 1])
	assert poly_squarefree(square) == Polynomial([2, 3, 1])


def test_pochhammer():
	assert pochhammer(0, 0) == Polynomial([1])
	assert pochhammer(0, 3) == Polynomial([0, 2, 3, 1])
	assert pochhammer(-1, 2) == Polynomial([0, -1, 1])
	assert pochhammer_value(Fraction(1, 2), 2) == Fraction(3, 4)


def test_combinatorics():
	assert binomial(5, 2) == 10
	assert binomial(3, 5) == 0
	assert multinomial(4, (2, 1, 1)) == 12
	with pytest.raises(ValueError):
		multinomial(4, (2, 1))
	assert stirling_first_unsigned(4, 2) == 11
	assert stirling_first_unsigned(3, 0) == 0
	assert stirling_first_unsigned(0, 0) == 1


def test_elementary_symmetric_and_products():
	assert elementary_symmetric_all([1, 2, 3]) == [1, 6, 11, 6]
	assert product_of_linear([1, 2]) == Polynomial([2, 3, 1])


@settings(deadline=None)
@given(st.integers(min_value=0, max_value=8))
def test_stirling_expands_rising_factorial(p):
	"""(x)_p = sum_j S^p_j x^j"""
	assert pochhammer(0, p) == Polynomial(stirling_first_unsigned(p, j) for j in range(p + 1))


@settings(deadline=None)
@given(st.lists(small_rationals, max_size=5), st.lists(small_rationals, max_size=5), small_rationals)
def test_evaluation_is_a_ring_homomorphism(a, b, point):
	p, q = Polynomial(a), Polynomial(b)
	assert (p * q).evaluate(point) == p.evaluate(point) * q.evaluate(point)
	assert (p + q).evaluate(point) == p.evaluate(point) + q.evaluate(point)
	assert p.shift(point).evaluate(0) == p.evaluate(point)


def test_polynomial_wraps_sympy_poly():
	p = Polynomial([Fraction(1, 2), 0, 3])
	assert p.poly == sympy.Poly(3 * sympy.Symbol("x") ** 2 + sympy.Rational(1, 2), sympy.Symbol("x"), domain=sympy.QQ)
	assert Polynomial.from_poly(p.poly) == p
	assert pickle.loads(pickle.dumps(p)) == p


@settings(deadline=None)
@given(small_rationals, st.integers(min_value=0, max_value=7))
def test_pochhammer_recurrence(shift, k):
	"""(x+s)_{k+1} = (x+s)_k (x+s+k)"""
	assert pochhammer(shift, k + 1) == pochhammer(shift, k) * Polynomial.linear(shift + k)
	assert pochhammer(shift, k).evaluate(0) == pochhammer_value(shift, k)


@settings(deadline=None)
@given(st.lists(small_rationals, max_size=7))
def test_esp_generating_identity(values):
	"""prod (1 + a_i t) = sum_k e_k t^k"""
	product = Polynomial([1])
	for a in values:
		product = product * Polynomial([1, a])
	e = elementary_symmetric_all(values)
	assert len(e) == len(values) + 1
	assert product == Polynomial(e)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.fractions(min_value=0, max_value=6, max_denominator=12), min_size=2, max_size=8))
def test_newton_inequalities(values):
	q = len(values)
	e = elementary_symmetric_all(values)
	for k in range(2, q + 1):
		assert e[k - 1] ** 2 >= e[k] * e[k - 2]
		normalized = [e[j] / binomial(q, j) for j in (k - 2, k - 1, k)]
		assert normalized[1] ** 2 >= normalized[0] * normalized[2]
