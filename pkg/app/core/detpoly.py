"""
Детерминантные многочлены Q_n^{α,β}(x), P_n(x), P_n^r(x) и разложение по Φ_k.

P_n строится четырьмя независимыми путями (прямая сумма, сумма по Φ_k,
формула для коэффициентов через числа Стирлинга, r=2 в P_n^r), а P_n^r
ещё и через определитель рядов по z (DomainMatrix над QQ[x, z]).
Совпадение путей - главная проверка модуля.
"""
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, List, Sequence as SequenceType, Tuple, Union
import logging

import sympy
from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from app.core.exactmath import (
	SYMBOL,
	ZERO,
	Polynomial,
	RationalLike,
	binomial,
	factorial,
	from_qq,
	multinomial,
	pochhammer,
	pochhammer_value,
	stirling_first_unsigned,
	to_qq,
	to_rational,
)
from app.core.rootcheck import weak_supermajorized
from app.schemas.sequence import Multiset, PhiDecomposition, Provenance, Sequence

logger = logging.getLogger(__name__)

SequenceLike = Union[Sequence, SequenceType[RationalLike]]


def _terms(f: SequenceLike, n: int) -> List[Fraction]:
	"""f_0..f_n из Sequence или списка; проверяет длину."""
	values = f.values if isinstance(f, Sequence) else [to_rational(v) for v in f]
	if len(values) < n + 1:
		raise ValueError(f"Sequence of length {len(values)} is too short for n={n} (need {n + 1} terms)")
	return list(values[: n + 1])


def _check_n(n: int, minimum: int) -> None:
	if n < minimum:
		raise ValueError(f"n must be at least {minimum}, got {n}")


# ========== Q_n^{α,β} и P_n ==========

def build_Q(n: int, alpha: RationalLike, beta: RationalLike, f: SequenceLike) -> Polynomial:
	"""
	Q_n^{α,β}(x) = Σ_k f_k f_{n-k} C(n,k) [(x+α)_k (x+β)_{n-k} - (x+α+β)_k (x)_{n-k}].

	Args:
		n: Степень, n >= 2
		alpha: α > 0
		beta: β > 0
		f: Последовательность длины не меньше n+1

	Returns:
		Точный многочлен (нулевой для геометрических f)

	Raises:
		ValueError: n < 2, α или β не положительны, f слишком короткая
	"""
	_check_n(n, 2)
	alpha = to_rational(alpha)
	beta = to_rational(beta)
	if alpha <= 0 or beta <= 0:
		raise ValueError(f"alpha and beta must be positive, got alpha={alpha}, beta={beta}")
	values = _terms(f, n)

	result = ZERO
	for k in range(n + 1):
		weight = values[k] * values[n - k]
		if weight == 0:
			continue
		bracket = pochhammer(alpha, k) * pochhammer(beta, n - k) - pochhammer(alpha + beta, k) * pochhammer(0, n - k)
		result = result + bracket.scale(weight * binomial(n, k))
	return result


def build_P(n: int, f: SequenceLike) -> Polynomial:
	"""P_n(x) = Q_n^{1,1}(x-1)."""
	return build_Q(n, 1, 1, f).shift(-1)


# ========== Разложение по Φ_k ==========

def _check_phi_index(n: int, k: int) -> None:
	_check_n(n, 2)
	if k < 0 or 2 * k > n:
		raise ValueError(f"k must lie in [0, n/2] for n={n}, got {k}")


def phi_coefficients(n: int, k: int) -> Tuple[Fraction, Fraction]:
	"""
	(A_k, B_k) для l_k(x) = -A_k x + B_k.

	При k < n/2: A_k = n(n-1) - 4k(n-k), B_k = n(n-1) - 2k(n-k).
	При k = n/2 (чётное n): A = -n/2, B = n(n-2)/4.
	"""
	_check_phi_index(n, k)
	if 2 * k == n:
		return Fraction(-n, 2), Fraction(n * (n - 2), 4)
	return Fraction(n * (n - 1) - 4 * k * (n - k)), Fraction(n * (n - 1) - 2 * k * (n - k))


def _phi_definitional(n: int, k: int) -> Polynomial:
	cross = pochhammer(-1, k) * pochhammer(1, n - k)
	if 2 * k == n:
		return pochhammer(0, k) * pochhammer(0, n - k) - cross
	return (pochhammer(0, k) * pochhammer(0, n - k)).scale(2) - cross - pochhammer(-1, n - k) * pochhammer(1, k)


def phi_two_term(n: int, k: int) -> Polynomial:
	"""
	2(x)_k(x)_{n-k} - (x-1)_k(x+1)_{n-k} - (x-1)_{n-k}(x+1)_k без особого случая k = n/2.

	При k = n/2 это удвоенный Φ_k; при n=4, k=2 получается 4x(x+1).
	"""
	_check_phi_index(n, k)
	return (pochhammer(0, k) * pochhammer(0, n - k)).scale(2) - pochhammer(-1, k) * pochhammer(1, n - k) - pochhammer(-1, n - k) * pochhammer(1, k)


def phi_product_form(n: int, k: int) -> Polynomial:
	"""
	Φ_k(x) = (x)_{k-1} (x+1)_{n-k-2} l_k(x).

	Отрицательные индексы: (x)_{-1} = 1/(x-1) при k = 0, (x+1)_{-1} = 1/x при n-k-2 = -1.
	"""
	A, B = phi_coefficients(n, k)
	numerator = Polynomial([B, -A]) * pochhammer(0, max(k - 1, 0)) * pochhammer(1, max(n - k - 2, 0))
	if k == 0:
		numerator = numerator.exact_div(Polynomial([-1, 1]))
	if n - k - 2 == -1:
		numerator = numerator.exact_div(Polynomial([0, 1]))
	return numerator


def chi(n: int, k: int) -> Multiset:
	"""
	χ_k: сдвиги в Φ_k = c·x^{[k>=2]}·l_k(x)·Π_{a∈χ_k}(x+a).

	χ_0 = {1..n-2}, χ_1 = {1..n-3}, χ_k = {1..k-2} ⊎ {1..n-k-2} при k >= 2.
	"""
	_check_phi_index(n, k)
	if k == 0:
		return Multiset.of(range(1, n - 1))
	if k == 1:
		return Multiset.of(range(1, n - 2))
	return Multiset.of(list(range(1, k - 1)) + list(range(1, n - k - 1)))


def phi(n: int, k: int) -> PhiDecomposition:
	"""Полные данные разложения Φ_k; сам Φ_k считается по определению."""
	A, B = phi_coefficients(n, k)
	return PhiDecomposition(
		n=n,
		k=k,
		A=A,
		B=B,
		l=Polynomial([B, -A]),
		chi=chi(n, k),
		phi=_phi_definitional(n, k),
	)


@lru_cache(maxsize=256)
def _phi_cached(n: int, k: int) -> Polynomial:
	return _phi_definitional(n, k)


def build_P_via_phi(n: int, f: SequenceLike) -> Polynomial:
	"""P_n(x) = Σ_{0<=k<=n/2} f_k f_{n-k} C(n,k) Φ_k(x)."""
	_check_n(n, 2)
	values = _terms(f, n)
	result = ZERO
	for k in range(n // 2 + 1):
		weight = values[k] * values[n - k]
		if weight == 0:
			continue
		result = result + _phi_cached(n, k).scale(weight * binomial(n, k))
	return result


def chi_chain_majorized(n: int) -> List[Tuple[int, bool]]:
	"""Для k = 3..n/2: выполняется ли χ_{k-1} ≺^W χ_k (частичные суммы χ_k не больше сумм χ_{k-1})."""
	return [(k, weak_supermajorized(chi(n, k - 1), chi(n, k))) for k in range(3, n // 2 + 1)]


def coeff_p(n: int, m: int, f: SequenceLike) -> Fraction:
	"""
	Коэффициент при x^m в P_n(x) по формуле с числами Стирлинга.

	p_n(0) = n!(f_1 f_{n-1} - f_0 f_n);
	p_n(m) = -n(n-1) S^{n-1}_{m+1} f_0 f_n
		+ Σ_{k=1}^{n/2} f_k f_{n-k} C(n,k) Σ_{i=0}^{m} S^{k-1}_i (B_k S^{n-k-1}_{m-i+1} - A_k S^{n-k-1}_{m-i}).

	Raises:
		ValueError: m вне [0, n-2]
	"""
	_check_n(n, 2)
	if m < 0 or m > n - 2:
		raise ValueError(f"m must lie in [0, n-2] = [0, {n - 2}], got {m}")
	values = _terms(f, n)
	if m == 0:
		return factorial(n) * (values[1] * values[n - 1] - values[0] * values[n])

	total = -n * (n - 1) * stirling_first_unsigned(n - 1, m + 1) * values[0] * values[n]
	for k in range(1, n // 2 + 1):
		weight = values[k] * values[n - k]
		if weight == 0:
			continue
		A, B = phi_coefficients(n, k)
		inner = Fraction(0)
		for i in range(m + 1):
			s = stirling_first_unsigned(k - 1, i)
			if s == 0:
				continue
			inner += s * (B * stirling_first_unsigned(n - k - 1, m - i + 1) - A * stirling_first_unsigned(n - k - 1, m - i))
		total += weight * binomial(n, k) * inner
	return total


# ========== P_n^r ==========

def compositions(n: int, parts: int) -> Iterator[Tuple[int, ...]]:
	"""Все (k_1..k_parts) с k_i >= 0 и суммой n в лексикографическом порядке."""
	if parts == 1:
		yield (n,)
		return
	for first in range(n + 1):
		for rest in compositions(n - first, parts - 1):
			yield (first,) + rest


# Кольца коэффициентов для точных определителей: QQ[x] и QQ[x, z]
_Z = sympy.Symbol("z")
_X_RING = QQ[SYMBOL]
_XZ_RING = QQ[SYMBOL, _Z]


def _to_x_ring(p: Polynomial):
	return _X_RING.ring.from_dict({(i,): to_qq(c) for i, c in enumerate(p.coeffs) if c})


def _collect(terms: Iterable[Tuple[int, Fraction]]) -> Polynomial:
	"""Многочлен от x из пар (степень, коэффициент), повторы складываются."""
	coeffs: List[Fraction] = []
	for power, value in terms:
		if power >= len(coeffs):
			coeffs.extend([Fraction(0)] * (power + 1 - len(coeffs)))
		coeffs[power] += value
	return Polynomial(coeffs)


def _pochhammer_det(parts: Tuple[int, ...]) -> Polynomial:
	"""det[(x+j-i)_{k_i}]_{i,j} над QQ[x]."""
	r = len(parts)
	rows = [[_to_x_ring(pochhammer(j - i, parts[i])) for j in range(r)] for i in range(r)]
	det = DomainMatrix(rows, (r, r), _X_RING).det()
	return _collect((monom[0], from_qq(c)) for monom, c in det.items())


def build_P_r(n: int, r: int, f: SequenceLike) -> Polynomial:
	"""
	P_n^r(x) = Σ_{k_1+..+k_r=n} C(n; k_1..k_r) f_{k_1}..f_{k_r} det[(x+j-i)_{k_i}]_{i,j=1..r}.

	Raises:
		ValueError: r < 2, n < 0, f слишком короткая
	"""
	if r < 2:
		raise ValueError(f"r must be at least 2, got {r}")
	_check_n(n, 0)
	values = _terms(f, n)

	result = ZERO
	for parts in compositions(n, r):
		weight = Fraction(1)
		for part in parts:
			weight *= values[part]
		if weight == 0:
			continue
		det = _pochhammer_det(parts)
		if det.is_zero:
			continue
		result = result + det.scale(weight * multinomial(n, parts))
	logger.debug(f"P_{n}^{r}: degree {result.degree}")
	return result


def _shifted_series(values: List[Fraction], shift: int, order: int):
	"""f(x+shift; z) = Σ_k f_k (x+shift)_k z^k / k! до z^order как элемент QQ[x, z]."""
	terms = {}
	for k in range(order + 1):
		if values[k] == 0:
			continue
		scale = values[k] / factorial(k)
		for i, c in enumerate(pochhammer(shift, k).coeffs):
			if c:
				terms[(i, k)] = to_qq(c * scale)
	return _XZ_RING.ring.from_dict(terms)


def series_oracle(n: int, r: int, f: SequenceLike) -> Polynomial:
	"""
	n! · [z^n] det[f(x+j-i; z)]_{i,j=1..r}.

	Независимый путь к P_n^r: определитель рядов по z вместо суммы по композициям.
	"""
	if r < 2:
		raise ValueError(f"r must be at least 2, got {r}")
	_check_n(n, 0)
	values = _terms(f, n)
	series = {shift: _shifted_series(values, shift, n) for shift in range(-(r - 1), r)}
	rows = [[series[j - i] for j in range(r)] for i in range(r)]
	det = DomainMatrix(rows, (r, r), _XZ_RING).det()
	coefficient = _collect((monom[0], from_qq(c)) for monom, c in det.items() if monom[1] == n)
	return coefficient.scale(factorial(n))


def reciprocal_pochhammer_sequence(c: RationalLike, n: int) -> Sequence:
	"""
	f_k = 1/(c)_k, k = 0..n: тогда f(a; z) = 1F1(a; c; z).

	Raises:
		ValueError: c <= 0
	"""
	c = to_rational(c)
	if c <= 0:
		raise ValueError(f"c must be positive, got {c}")
	_check_n(n, 0)
	return Sequence(
		values=[1 / pochhammer_value(c, k) for k in range(n + 1)],
		provenance=Provenance.reciprocal_pochhammer,
		provenance_param=c,
	)


def generating_polynomial(f: SequenceLike) -> Polynomial:
	"""Σ f_k x^k."""
	values = f.values if isinstance(f, Sequence) else [to_rational(v) for v in f]
	return Polynomial(values)


