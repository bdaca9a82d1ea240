"""
Точные анализаторы многочленов: положительность коэффициентов,
устойчивость по Гурвицу, вещественность и отрицательность корней.
Плюс проверки взвешенных сумм и мажоризации для отношений e_k/e_{k-1}.
"""
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence as SequenceType, Union
import logging

import sympy
from sympy import QQ, Poly
from sympy.polys.matrices import DomainMatrix

from app.core.exactmath import (
	Polynomial,
	RationalLike,
	elementary_symmetric_all,
	from_qq,
	normalize_leading,
	poly_gcd,
	poly_squarefree,
	to_qq,
	to_rational,
	to_sympy,
)
from app.schemas.sequence import Multiset, Sequence
from app.schemas.verdict import Lemma1Report, StabilityVerdict, VerdictKind, WitnessReason

logger = logging.getLogger(__name__)

# Конец интервала Штурма: рациональное число либо sympy.oo / -sympy.oo
ExtendedRational = Union[RationalLike, sympy.Expr]


# ========== Коэффициенты ==========

def coeffs_positive(p: Polynomial, expected_degree: Optional[int] = None) -> StabilityVerdict:
	"""
	Все коэффициенты при x^0..x^deg строго положительны (и степень равна ожидаемой).

	Args:
		p: Многочлен, нулевой допускается
		expected_degree: Ожидаемая степень или None

	Returns:
		Вердикт all_coeffs_positive
	"""
	kind = VerdictKind.all_coeffs_positive
	if expected_degree is not None and p.degree != expected_degree:
		return StabilityVerdict.fail(kind, WitnessReason.degree_mismatch, expected=expected_degree, observed=p.degree)
	if p.is_zero:
		return StabilityVerdict.fail(kind, WitnessReason.zero_polynomial)
	for index, c in enumerate(p.coeffs):
		if c <= 0:
			return StabilityVerdict.fail(kind, WitnessReason.nonpositive_coefficient, index=index, value=c)
	return StabilityVerdict.ok(kind)


# ========== Гурвиц ==========

def _require_nonzero(p: Polynomial, analyzer: str) -> None:
	if p.is_zero:
		raise ValueError(f"{analyzer} is undefined for the zero polynomial")


def hurwitz_matrix(p: Polynomial) -> List[List[Fraction]]:
	"""
	Матрица Гурвица H_{ij} = a_{2j-i} (индексы с 1), a_0 - старший коэффициент.
	"""
	degree = p.degree or 0
	# a_k - коэффициент при x^{degree-k}
	a = list(reversed(p.coeffs))

	def entry(index: int) -> Fraction:
		if 0 <= index <= degree:
			return a[index]
		return Fraction(0)

	return [[entry(2 * j - i) for j in range(1, degree + 1)] for i in range(1, degree + 1)]


def hurwitz_stable(p: Polynomial) -> StabilityVerdict:
	"""
	Все корни лежат в открытой левой полуплоскости.

	Критерий: после нормировки старшего коэффициента все ведущие главные
	миноры матрицы Гурвица положительны. Миноры считаются точно через
	DomainMatrix над QQ.

	Raises:
		ValueError: Нулевой многочлен
	"""
	_require_nonzero(p, "hurwitz_stable")
	kind = VerdictKind.hurwitz_stable
	p = normalize_leading(p)
	if p.degree == 0:
		return StabilityVerdict.ok(kind)

	rows = [[to_qq(value) for value in row] for row in hurwitz_matrix(p)]
	for k in range(1, len(rows) + 1):
		minor = from_qq(DomainMatrix([row[:k] for row in rows[:k]], (k, k), QQ).det())
		if minor <= 0:
			return StabilityVerdict.fail(kind, WitnessReason.hurwitz_minor_nonpositive, index=k, value=minor)
	return StabilityVerdict.ok(kind)


# ========== Штурм ==========

def _endpoint(point: ExtendedRational) -> sympy.Expr:
	"""Конец интервала: sympy.oo, -sympy.oo или точное рациональное."""
	if point is sympy.oo or point is sympy.S.NegativeInfinity:
		return point
	return to_sympy(point)


def _sign_at(q: Poly, point: sympy.Expr) -> int:
	if q.is_zero:
		return 0
	if point.is_infinite:
		sign = 1 if q.LC() > 0 else -1
		if point.is_negative and q.degree() % 2 == 1:
			sign = -sign
		return sign
	value = q.eval(point)
	return int(sympy.sign(value))


def sturm_chain(p: Polynomial) -> List[Polynomial]:
	"""
	Последовательность Штурма sympy: p, p', -rem(...), ...

	sympy строит её от нормированной свободной от квадратов части, так что
	знак всей цепочки может отличаться от знака p; число перемен знака от
	этого не меняется.
	"""
	return [Polynomial.from_poly(q) for q in p.poly.sturm()]


def sign_changes(seq: Iterable[RationalLike]) -> int:
	"""Число перемен знака, нули пропускаются."""
	changes = 0
	previous = 0
	for raw in seq:
		value = to_rational(raw) if not isinstance(raw, int) else raw
		sign = (value > 0) - (value < 0)
		if sign == 0:
			continue
		if previous and sign != previous:
			changes += 1
		previous = sign
	return changes


def _variations(chain: List[Polynomial], point: sympy.Expr) -> int:
	return sign_changes(_sign_at(q.poly, point) for q in chain)


def sturm_count(p: Polynomial, a: ExtendedRational, b: ExtendedRational) -> int:
	"""
	Число различных вещественных корней на (a, b].

	Args:
		p: Ненулевой многочлен без кратных корней
		a: Левый конец (рациональное число или -sympy.oo)
		b: Правый конец (рациональное число или sympy.oo)

	Raises:
		ValueError: Нулевой многочлен, есть кратные корни или конец не рационален
	"""
	_require_nonzero(p, "sturm_count")
	if p.degree and poly_gcd(p, p.derivative()).degree:
		raise ValueError(f"sturm_count requires a squarefree polynomial, got {p.format()}")
	a, b = _endpoint(a), _endpoint(b)
	if bool(a >= b):
		return 0
	if p.degree == 0:
		return 0
	chain = sturm_chain(p)
	return _variations(chain, a) - _variations(chain, b)


def real_rooted_negative(p: Polynomial) -> StabilityVerdict:
	"""
	Все корни вещественны и строго отрицательны.

	Решается на свободной от квадратов части: число её вещественных корней
	должно равняться степени, корней на [0, ∞) быть не должно.

	Raises:
		ValueError: Нулевой многочлен
	"""
	_require_nonzero(p, "real_rooted_negative")
	kind = VerdictKind.real_rooted_negative
	if p.degree == 0:
		return StabilityVerdict.ok(kind)

	squarefree = poly_squarefree(p)
	expected = squarefree.degree
	observed = sturm_count(squarefree, -sympy.oo, sympy.oo)
	if observed != expected:
		return StabilityVerdict.fail(kind, WitnessReason.real_root_shortfall, expected=expected, observed=observed)
	if p.evaluate(0) == 0:
		return StabilityVerdict.fail(kind, WitnessReason.nonnegative_root, point=Fraction(0), observed=1)
	nonnegative = sturm_count(squarefree, 0, sympy.oo)
	if nonnegative:
		return StabilityVerdict.fail(kind, WitnessReason.nonnegative_root, observed=nonnegative)
	return StabilityVerdict.ok(kind)


def cross_implications(p: Polynomial) -> List[StabilityVerdict]:
	"""
	Три вердикта для ненулевого p: положительность (после нормировки знака),
	Гурвиц, вещественные отрицательные корни.
	"""
	return [coeffs_positive(normalize_leading(p)), hurwitz_stable(p), real_rooted_negative(p)]


# ========== Взвешенные суммы ==========

def lemma1_sum(f: Union[Sequence, SequenceType[RationalLike]], M: SequenceType[RationalLike]) -> Fraction:
	"""
	Σ_{0<=k<=n/2} f_k f_{n-k} M_k.

	Raises:
		ValueError: len(M) != n//2 + 1
	"""
	values = f.values if isinstance(f, Sequence) else [to_rational(v) for v in f]
	weights = [to_rational(m) for m in M]
	n = len(values) - 1
	if len(weights) != n // 2 + 1:
		raise ValueError(f"M must have n//2 + 1 = {n // 2 + 1} entries for n={n}, got {len(weights)}")
	return sum((values[k] * values[n - k] * weights[k] for k in range(n // 2 + 1)), Fraction(0))


def lemma1_check(f: Union[Sequence, SequenceType[RationalLike]], M: SequenceType[RationalLike]) -> Lemma1Report:
	"""Сумма плюс список нарушенных условий (последний M > 0, ΣM >= 0, ровно одна перемена знака, f лог-вогнута)."""
	from app.core.pfgen import check_log_concave

	total = lemma1_sum(f, M)
	weights = [to_rational(m) for m in M]
	violations = []
	if weights[-1] <= 0:
		violations.append("last_weight_not_positive")
	if sum(weights) < 0:
		violations.append("weight_sum_negative")
	if sign_changes(weights) != 1:
		violations.append("sign_changes_not_one")
	if not check_log_concave(f, strict=False):
		violations.append("sequence_not_log_concave")
	return Lemma1Report(total=total, hypotheses_hold=not violations, violations=violations)


# ========== Мажоризация ==========

def _sorted_positive(values: Union[Multiset, Iterable[RationalLike]], name: str) -> List[Fraction]:
	elements = sorted(to_rational(v) for v in getattr(values, "elements", values))
	if any(v <= 0 for v in elements):
		raise ValueError(f"{name} must contain only positive elements, got {[str(v) for v in elements]}")
	return elements


def weak_supermajorized(B: Union[Multiset, Iterable[RationalLike]], A: Union[Multiset, Iterable[RationalLike]]) -> bool:
	"""
	B ≺^W A: после сортировки по возрастанию Σ_{i<=k} a_i <= Σ_{i<=k} b_i для всех k.

	Raises:
		ValueError: Разные размеры или неположительные элементы
	"""
	b = _sorted_positive(B, "B")
	a = _sorted_positive(A, "A")
	if len(a) != len(b):
		raise ValueError(f"Multisets must have equal size, got |A|={len(a)}, |B|={len(b)}")
	sum_a = sum_b = Fraction(0)
	for a_i, b_i in zip(a, b):
		sum_a += a_i
		sum_b += b_i
		if sum_a > sum_b:
			return False
	return True


def esp_ratio_decreases(B: Union[Multiset, Iterable[RationalLike]], A: Union[Multiset, Iterable[RationalLike]], k: int) -> bool:
	"""
	e_k(A)/e_{k-1}(A) <= e_k(B)/e_{k-1}(B) при B ≺^W A.

	Raises:
		ValueError: B не мажорирует A или k вне [1, q]
	"""
	if not weak_supermajorized(B, A):
		raise ValueError("esp_ratio_decreases requires B to be weakly supermajorized by A")
	a = _sorted_positive(A, "A")
	if not 1 <= k <= len(a):
		raise ValueError(f"k must lie in [1, {len(a)}], got {k}")
	e_a = elementary_symmetric_all(a)
	e_b = elementary_symmetric_all(_sorted_positive(B, "B"))
	# e_{k-1} > 0 для положительных элементов
	return e_a[k] * e_b[k - 1] <= e_b[k] * e_a[k - 1]
