from fractions import Fraction
from itertools import combinations

import mpmath
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from app.core.pfgen import (
	GeneratorRejected,
	branden_operator,
	check_log_concave,
	check_pf_inf,
	check_pf_r,
	gen_pf2,
	gen_pf_inf,
	gen_pf_r_cosbound,
	gen_pf_r_sector,
	gen_q3,
	grabarek_transform,
	kv_bound,
	recover_deltas,
	sector_angle_bound,
)
from app.schemas.generator import BrandenVariant
from app.schemas.sequence import Provenance, Sequence

deltas_strategy = st.fractions(min_value=Fraction(1, 8), max_value=1, max_denominator=16)
roots_strategy = st.lists(st.fractions(min_value=Fraction(1, 8), max_value=8, max_denominator=16), min_size=1, max_size=7)


def test_gen_pf2_product_formula():
	f = gen_pf2(2, 2, [Fraction(1, 2), Fraction(1, 2)])
	assert f.values == [2, 2, 1]
	assert f.provenance == Provenance.pf2
	assert gen_pf2(3, 1, [1, 1, 1]).values == [1, 1, 1, 1]


def test_gen_pf2_validation():
	with pytest.raises(ValueError):
		gen_pf2(2, 1, [Fraction(1, 2)])
	with pytest.raises(ValueError):
		gen_pf2(2, 1, [Fraction(1, 2), Fraction(3, 2)])
	with pytest.raises(ValueError):
		gen_pf2(2, 0, [Fraction(1, 2), Fraction(1, 2)])


@settings(deadline=None)
@given(st.integers(min_value=1, max_value=8).flatmap(lambda n: st.lists(deltas_strategy, min_size=n, max_size=n)), deltas_strategy)
def test_recover_deltas_inverts_gen_pf2(deltas, f0):
	f = gen_pf2(len(deltas), f0, deltas)
	assert recover_deltas(f) == deltas
	assert check_log_concave(f)
	assert check_log_concave(f, strict=True) == all(d < 1 for d in deltas[1:])


def test_kv_bound():
	assert kv_bound(2) == 1
	assert kv_bound(3) == Fraction(1, 2)
	assert kv_bound(5) == Fraction(1, 3)
	with mpmath.workdps(50):
		exact = 1 / (4 * mpmath.cos(mpmath.pi / 5) ** 2)
		value = mpmath.mpf(kv_bound(4).numerator) / kv_bound(4).denominator
		assert value <= exact
		assert exact - value < mpmath.mpf(10) ** -29
	assert kv_bound(4) < Fraction(3819660112501052, 10 ** 16)
	with pytest.raises(ValueError):
		kv_bound(1)


def test_sector_angle_bound_is_below_sector():
	with mpmath.workdps(50):
		for r in range(2, 7):
			bound = sector_angle_bound(r)
			sector = mpmath.pi / (r + 1)
			value = mpmath.mpf(bound.numerator) / bound.denominator
			assert value < sector
			assert sector - value < mpmath.mpf(10) ** -29


def test_check_pf_r_witness_for_ones():
	f = Sequence.ones(2)
	assert check_pf_r(f, 2).ok
	result = check_pf_r(f, 3)
	assert not result.ok
	assert result.witness.rows == [1, 2, 3]
	assert result.witness.cols == [2, 3, 4]
	assert result.witness.value == -1


def test_check_pf_r_detects_non_log_concave():
	result = check_pf_r([1, 1, 2], 2)
	assert not result.ok
	assert result.witness.value < 0
	assert len(result.witness.rows) == 2


def test_check_pf_r_is_scale_invariant():
	assert check_pf_r([Fraction(1, 3), Fraction(2, 3), Fraction(1, 3)], 4).ok


@settings(max_examples=30, deadline=None)
@given(roots_strategy)
def test_pf_inf_sequences_pass_all_checks(roots):
	f = gen_pf_inf(roots)
	assert f.provenance == Provenance.pf_inf
	assert check_pf_inf(f)
	for r in range(2, 6):
		assert check_pf_r(f, r).ok


def test_check_pf_inf():
	assert check_pf_inf([2, 3, 1])
	assert check_pf_inf([0, 0, 2, 3, 1])
	assert not check_pf_inf([1, 1, 1])
	assert check_pf_inf([5])


def test_gen_pf_inf_rejects_nonpositive_roots():
	with pytest.raises(ValueError):
		gen_pf_inf([1, 0])


def test_gen_pf_r_cosbound():
	f = gen_pf_r_cosbound(4, 3, 1, [Fraction(1, 2)] * 4)
	assert f.provenance == Provenance.pf_r
	assert f.provenance_param == 3
	assert check_pf_r(f, 3).ok
	with pytest.raises(ValueError):
		gen_pf_r_cosbound(4, 3, 1, [Fraction(3, 4)] * 4)


def test_gen_pf_r_sector():
	f = gen_pf_r_sector(3, [1], [(1, Fraction(1, 2)), (2, Fraction(3, 10))], denominator_bound=16)
	assert f.n == 5
	assert check_pf_r(f, 3).ok
	with pytest.raises(ValueError):
		gen_pf_r_sector(3, [1], [(1, 1)])
	with pytest.raises(ValueError):
		gen_pf_r_sector(3, [0], [])


def test_gen_q3():
	f = gen_q3(4, 1, 1, [Fraction(1, 2)] * 3)
	# f_2 = f_0 β² δ_2 / (1 + δ_2)
	assert f.values[:3] == [1, 1, Fraction(1, 3)]
	assert f.n == 4
	assert f.provenance == Provenance.q3
	assert check_pf_r(f, 3).ok


def test_gen_q3_validation():
	with pytest.raises(ValueError):
		gen_q3(4, 1, 1, [Fraction(1, 2), Fraction(3, 2), Fraction(1, 2)])
	with pytest.raises(ValueError):
		gen_q3(4, 1, 1, [Fraction(1, 2), 0, Fraction(1, 2)])
	with pytest.raises(ValueError):
		gen_q3(4, 0, 1, [Fraction(1, 2)] * 3)
	with pytest.raises(ValueError):
		gen_q3(4, 1, 1, [Fraction(1, 2)] * 2)
	with pytest.raises(ValueError):
		gen_q3(0, 1, 1, [])


def test_generator_rejected_is_value_error():
	assert issubclass(GeneratorRejected, ValueError)


def test_check_log_concave():
	assert check_log_concave([1, 2, 1], strict=True)
	assert check_log_concave([1, 1, 1])
	assert not check_log_concave([1, 1, 1], strict=True)
	assert not check_log_concave([1, 0, 1])
	assert not check_log_concave([1, 1, 2])
	assert check_log_concave([0, 1, 1])


def test_grabarek_transform():
	g = grabarek_transform([1, 2, 1], 1)
	assert g.values == [1, 3, 1]
	with pytest.raises(ValueError):
		grabarek_transform([1, 2, 1], 0)


@settings(max_examples=20, deadline=None)
@given(roots_strategy, st.integers(min_value=1, max_value=3))
def test_grabarek_preserves_pf_inf(roots, p):
	assert check_pf_inf(grabarek_transform(gen_pf_inf(roots), p))


def test_branden_operator():
	f = [1, 2, 1]
	assert branden_operator(f, [1]).values == [1, 4, 1]
	assert branden_operator(f, [1, -1]).values == [1, 3, 1]
	assert branden_operator(f, [1], BrandenVariant.offdiagonal).values == [2, 2]


small_sequences = st.lists(st.integers(min_value=0, max_value=5), min_size=1, max_size=4).map(lambda v: [1] + v)


def _toeplitz_minor(values, rows, cols):
	n = len(values) - 1
	return sympy.Matrix([[values[j - i] if 0 <= j - i <= n else 0 for j in cols] for i in rows]).det(method="bareiss")


@settings(max_examples=60, deadline=None)
@given(small_sequences, st.integers(min_value=2, max_value=4))
def test_check_pf_r_is_monotone_in_r(values, r):
	"""PF_r implies PF_{r-1}"""
	if check_pf_r(values, r).ok:
		assert check_pf_r(values, r - 1).ok
	if not check_pf_r(values, r - 1).ok:
		assert not check_pf_r(values, r).ok


@settings(max_examples=12, deadline=None)
@given(small_sequences, st.integers(min_value=2, max_value=3))
def test_check_pf_r_agrees_with_sympy_minors(values, r):
	n = len(values) - 1
	window = range(n + r + 1)
	negative_orders = [
		order
		for order in range(1, r + 1)
		if any(
			int(_toeplitz_minor(values, rows, cols)) < 0
			for rows in combinations(window, order)
			if rows[0] == 0
			for cols in combinations(window, order)
		)
	]
	result = check_pf_r(values, r)
	assert result.ok == (not negative_orders)
	if not result.ok:
		rows = [i - 1 for i in result.witness.rows]
		cols = [j - 1 for j in result.witness.cols]
		assert len(rows) == negative_orders[0]
		assert result.witness.value == int(_toeplitz_minor(values, rows, cols))


@pytest.mark.parametrize("r", [4, 5])
@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_gen_pf_r_cosbound_always_verifies(r, data):
	n = data.draw(st.integers(min_value=1, max_value=7))
	ds = data.draw(st.lists(st.fractions(min_value=Fraction(1, 64), max_value=kv_bound(r), max_denominator=64), min_size=n, max_size=n))
	f0 = data.draw(deltas_strategy)
	f = gen_pf_r_cosbound(n, r, f0, ds)
	assert check_pf_r(f, r).ok
	assert f.provenance_param == r
