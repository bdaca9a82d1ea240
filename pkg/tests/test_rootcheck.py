from fractions import Fraction
import math

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from app.core.exactmath import X, Polynomial, product_of_linear
from app.core.rootcheck import (
	coeffs_positive,
	cross_implications,
	esp_ratio_decreases,
	hurwitz_matrix,
	hurwitz_stable,
	lemma1_check,
	lemma1_sum,
	real_rooted_negative,
	sign_changes,
	sturm_count,
	weak_supermajorized,
)
from app.schemas.verdict import VerdictKind, WitnessReason

roots_strategy = st.lists(st.fractions(min_value=Fraction(1, 8), max_value=8, max_denominator=16), min_size=1, max_size=6)


def test_coeffs_positive():
	assert coeffs_positive(Polynomial([1, 2, 3])).holds
	verdict = coeffs_positive(Polynomial([1, 0, 3]))
	assert not verdict.holds
	assert verdict.witness.reason == WitnessReason.nonpositive_coefficient
	assert verdict.witness.index == 1


def test_coeffs_positive_degree_and_zero():
	verdict = coeffs_positive(Polynomial([1, 1]), expected_degree=2)
	assert verdict.witness.reason == WitnessReason.degree_mismatch
	assert verdict.witness.expected == 2
	assert verdict.witness.observed == 1
	assert coeffs_positive(Polynomial()).witness.reason == WitnessReason.zero_polynomial


def test_hurwitz_matrix_layout():
	# a_0 x^3 + a_1 x^2 + a_2 x + a_3 = x^3 + 2x^2 + 3x + 4
	matrix = hurwitz_matrix(Polynomial([4, 3, 2, 1]))
	assert matrix == [[2, 4, 0], [1, 3, 0], [0, 2, 4]]


def test_hurwitz_stable():
	assert hurwitz_stable(Polynomial([1, 1, 1])).holds
	assert not hurwitz_stable(Polynomial([1, -1, 1])).holds
	assert hurwitz_stable(Polynomial([-1, -1])).holds
	assert hurwitz_stable(Polynomial([5])).holds


def test_hurwitz_boundary_case():
	# (x + 1)(x^2 + 1): корни на мнимой оси
	verdict = hurwitz_stable(Polynomial([1, 1, 1, 1]))
	assert not verdict.holds
	assert verdict.witness.reason == WitnessReason.hurwitz_minor_nonpositive
	assert verdict.witness.index == 2
	assert verdict.witness.value == 0


def test_analyzers_reject_zero_polynomial():
	with pytest.raises(ValueError):
		hurwitz_stable(Polynomial())
	with pytest.raises(ValueError):
		real_rooted_negative(Polynomial())


def test_sturm_count():
	p = X * X - 2
	assert sturm_count(p, -sympy.oo, sympy.oo) == 2
	assert sturm_count(p, 0, sympy.oo) == 1
	assert sturm_count(p, -2, 1) == 1
	assert sturm_count(p, 1, 1) == 0
	with pytest.raises(ValueError):
		sturm_count((X + 1) * (X + 1), -sympy.oo, sympy.oo)
	with pytest.raises(ValueError):
		sturm_count(p, -math.inf, math.inf)


@settings(max_examples=40, deadline=None)
@given(st.sets(st.fractions(min_value=Fraction(1, 8), max_value=8, max_denominator=16), min_size=1, max_size=8))
def test_sturm_count_of_distinct_negative_roots(roots):
	p = product_of_linear(sorted(roots))
	assert sturm_count(p, -sympy.oo, sympy.oo) == len(roots)
	assert sturm_count(p, 0, sympy.oo) == 0
	assert sturm_count(p, -sympy.oo, 0) == len(roots)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(min_value=-5, max_value=9), min_size=2, max_size=7).filter(lambda c: c[-1] != 0))
def test_hurwitz_verdict_matches_sympy_minors(coeffs):
	p = Polynomial(coeffs)
	if p.leading < 0:
		p = -p
	matrix = sympy.Matrix(hurwitz_matrix(p))
	minors = [matrix[:k, :k].det(method="bareiss") for k in range(1, matrix.rows + 1)]
	verdict = hurwitz_stable(p)
	assert verdict.holds == all(m > 0 for m in minors)
	if not verdict.holds:
		k = verdict.witness.index
		assert verdict.witness.value == Fraction(int(minors[k - 1].p), int(minors[k - 1].q))
		assert all(m > 0 for m in minors[: k - 1])


def test_sign_changes_skip_zeros():
	assert sign_changes([1, 0, -1, -2, 0, 3]) == 2
	assert sign_changes([0, 0]) == 0


def test_real_rooted_negative():
	assert real_rooted_negative(product_of_linear([1, 2])).holds
	assert real_rooted_negative((X + 1) * (X + 1)).holds
	assert real_rooted_negative(Polynomial([7])).holds

	shortfall = real_rooted_negative(X * X + 1)
	assert shortfall.witness.reason == WitnessReason.real_root_shortfall
	assert shortfall.witness.expected == 2
	assert shortfall.witness.observed == 0

	at_zero = real_rooted_negative(X * (X + 1))
	assert at_zero.witness.reason == WitnessReason.nonnegative_root
	assert real_rooted_negative((X - 1) * (X + 1)).witness.reason == WitnessReason.nonnegative_root


@settings(max_examples=40, deadline=None)
@given(roots_strategy)
def test_analyzers_agree_with_construction(roots):
	p = product_of_linear(roots)
	positive, stable, real_negative = cross_implications(p)
	assert positive.holds and stable.holds and real_negative.holds
	unstable = p * (X - roots[0])
	assert not hurwitz_stable(unstable).holds
	assert not real_rooted_negative(unstable).holds


@settings(max_examples=40, deadline=None)
@given(roots_strategy, st.fractions(min_value=0, max_value=2, max_denominator=8), st.fractions(min_value=Fraction(1, 8), max_value=4, max_denominator=8))
def test_complex_pair_in_right_half_plane(roots, a, b):
	p = product_of_linear(roots) * Polynomial([a * a + b * b, -2 * a, 1])
	positive, stable, real_negative = cross_implications(p)
	assert not stable.holds
	assert not real_negative.holds


def test_cross_implications_kinds():
	kinds = [v.kind for v in cross_implications(Polynomial([1, 1]))]
	assert kinds == [VerdictKind.all_coeffs_positive, VerdictKind.hurwitz_stable, VerdictKind.real_rooted_negative]


def test_lemma1_sum_and_check():
	assert lemma1_sum([1, 1, 1], [-1, 1]) == 0
	assert lemma1_sum([1, 2, 1], [-1, 2]) == 7
	report = lemma1_check([1, 2, 1], [-1, 2])
	assert report.hypotheses_hold
	assert report.total == 7
	with pytest.raises(ValueError):
		lemma1_sum([1, 2, 1], [1])


def test_lemma1_check_reports_violations():
	report = lemma1_check([1, 1, 2], [1, -1])
	assert not report.hypotheses_hold
	assert "last_weight_not_positive" in report.violations
	assert "sequence_not_log_concave" in report.violations


def test_weak_supermajorized():
	assert weak_supermajorized([2, 2], [1, 2])
	assert not weak_supermajorized([1, 2], [2, 2])
	assert weak_supermajorized([1, 2, 3], [3, 2, 1])
	with pytest.raises(ValueError):
		weak_supermajorized([1], [1, 2])
	with pytest.raises(ValueError):
		weak_supermajorized([0, 1], [1, 1])


def test_esp_ratio_decreases():
	assert esp_ratio_decreases([2, 2], [1, 2], 1)
	assert esp_ratio_decreases([2, 2], [1, 2], 2)
	with pytest.raises(ValueError):
		esp_ratio_decreases([1, 2], [2, 2], 1)
	with pytest.raises(ValueError):
		esp_ratio_decreases([2, 2], [1, 2], 3)
