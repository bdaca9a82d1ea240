"""
Генераторы последовательностей Пойа порядка r и проверка принадлежности PF_r.

Все генераторы детерминированы при заданных параметрах; случайный выбор
параметров живёт в app.services.sampling. Там, где рецепт требует
иррациональных величин (cos, квадратные корни), результат проверяется
точным перебором миноров и отбрасывается через GeneratorRejected.
"""
from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence as SequenceType, Tuple
import logging

import mpmath

from app.core.config import settings
from app.core.exactmath import Polynomial, RationalLike, binomial, common_denominator, product_of_linear, to_rational
from app.core.rootcheck import real_rooted_negative
from app.schemas.generator import BrandenVariant, MinorCheckResult, MinorWitness
from app.schemas.sequence import Provenance, Sequence, has_internal_zero, values_of

logger = logging.getLogger(__name__)

# Знаменатель рационализации членов Q_3-последовательности
Q3_DENOMINATOR_LIMIT = 10 ** 12
DECIMAL_DIGITS = 30


class GeneratorRejected(ValueError):
	"""Кандидат не прошёл точную повторную проверку; сэмплер должен попробовать снова."""
	pass


# ========== PF_2 через δ ==========

def gen_pf2(n: int, f0: RationalLike, deltas: SequenceType[RationalLike]) -> Sequence:
	"""
	f_k = f_0^{k+1} δ_1^k δ_2^{k-1} ... δ_k.

	Отношение f_k / f_{k-1} = f_0 δ_1 ... δ_k, поэтому значения считаются
	накоплением без возведения в степень.

	Args:
		n: Последний индекс
		f0: f_0 > 0
		deltas: δ_1..δ_n из (0, 1]

	Raises:
		ValueError: Неверная длина deltas, δ вне (0, 1], f0 <= 0
	"""
	f0 = to_rational(f0)
	deltas = [to_rational(d) for d in deltas]
	if f0 <= 0:
		raise ValueError(f"f0 must be positive, got {f0}")
	if len(deltas) != n:
		raise ValueError(f"Expected {n} deltas, got {len(deltas)}")
	for index, delta in enumerate(deltas, start=1):
		if not 0 < delta <= 1:
			raise ValueError(f"delta_{index} must lie in (0, 1], got {delta}")

	values = [f0]
	ratio = f0
	for delta in deltas:
		ratio *= delta
		values.append(values[-1] * ratio)
	return Sequence(values=values, provenance=Provenance.pf2)


def recover_deltas(f) -> List[Fraction]:
	"""
	Обратное к gen_pf2: δ_1 = f_1/f_0², δ_k = f_{k-2} f_k / f_{k-1}².

	Raises:
		ValueError: f_0..f_{n-1} содержат ноль
	"""
	values = values_of(f)
	if any(v == 0 for v in values[:-1]):
		raise ValueError("recover_deltas needs f_0..f_{n-1} to be positive")
	deltas = []
	for k in range(1, len(values)):
		if k == 1:
			deltas.append(values[1] / values[0] ** 2)
		else:
			deltas.append(values[k - 2] * values[k] / values[k - 1] ** 2)
	return deltas


# ========== PF_r: Катков-Вишнякова и сектор ==========

_EXACT_KV_BOUNDS = {2: Fraction(1), 3: Fraction(1, 2), 5: Fraction(1, 3)}


@lru_cache(maxsize=None)
def kv_bound(r: int) -> Fraction:
	"""
	Рациональное c_r <= 1/(4cos²(π/(r+1))).

	Для r = 2, 3, 5 значение точное, иначе 30 знаков с округлением вниз.
	"""
	if r < 2:
		raise ValueError(f"r must be at least 2, got {r}")
	if r in _EXACT_KV_BOUNDS:
		return _EXACT_KV_BOUNDS[r]
	with mpmath.workdps(DECIMAL_DIGITS + 10):
		value = 1 / (4 * mpmath.cos(mpmath.pi / (r + 1)) ** 2)
		scaled = int(mpmath.floor(value * 10 ** DECIMAL_DIGITS))
	return Fraction(scaled, 10 ** DECIMAL_DIGITS)


@lru_cache(maxsize=None)
def sector_angle_bound(r: int) -> Fraction:
	"""Рациональное число строго меньше π/(r+1) (30 знаков, округление вниз)."""
	if r < 1:
		raise ValueError(f"r must be positive, got {r}")
	with mpmath.workdps(DECIMAL_DIGITS + 10):
		scaled = int(mpmath.floor(mpmath.pi / (r + 1) * 10 ** DECIMAL_DIGITS))
	return Fraction(scaled, 10 ** DECIMAL_DIGITS)


def _mpf(value: Fraction):
	return mpmath.mpf(value.numerator) / value.denominator


def _rationalize(value, bits: int) -> Fraction:
	"""mpmath-число в Fraction с двоичной точностью bits."""
	return Fraction(int(mpmath.nint(value * mpmath.mpf(2) ** bits)), 2 ** bits)


def verify_pf_r(f: Sequence, r: int) -> Sequence:
	"""Возвращает f, если она PF_r, иначе бросает GeneratorRejected."""
	result = check_pf_r(f, r)
	if not result.ok:
		raise GeneratorRejected(f"Candidate {f.values} is not PF_{r}: minor {result.witness.value} at rows {result.witness.rows}, cols {result.witness.cols}")
	return f


def gen_pf_r_cosbound(n: int, r: int, f0: RationalLike, deltas: SequenceType[RationalLike]) -> Sequence:
	"""
	PF_2-рецепт с δ_k <= c_r: тогда f_k² >= 4cos²(π/(r+1)) f_{k-1} f_{k+1}.

	Конечный результат проверяется перебором миноров.

	Raises:
		ValueError: δ больше c_r
		GeneratorRejected: Результат не прошёл проверку PF_r
	"""
	bound = kv_bound(r)
	for index, delta in enumerate(deltas, start=1):
		if to_rational(delta) > bound:
			raise ValueError(f"delta_{index} = {delta} exceeds the PF_{r} bound {bound}")
	base = gen_pf2(n, f0, deltas)
	candidate = base.model_copy(update={"provenance": Provenance.pf_r, "provenance_param": Fraction(r)})
	return verify_pf_r(candidate, r)


def gen_pf_r_sector(
	r: int,
	real_roots: SequenceType[RationalLike],
	pair_params: SequenceType[Tuple[RationalLike, RationalLike]],
	denominator_bound: Optional[int] = None,
) -> Sequence:
	"""
	Коэффициенты Π(x + a_i) · Π(x² + 2ρ cos(φ) x + ρ²).

	cos φ округляется вверх до рационального со знаменателем <= denominator_bound
	(не больше 1), поэтому реализованный угол не больше φ и корни остаются в секторе.

	Args:
		r: Порядок PF
		real_roots: a_i > 0
		pair_params: Пары (ρ > 0, φ ∈ [0, π/(r+1))), φ в радианах

	Raises:
		ValueError: φ вне сектора, ρ <= 0, a_i <= 0
		GeneratorRejected: Результат не прошёл проверку PF_r
	"""
	if r < 2:
		raise ValueError(f"r must be at least 2, got {r}")
	denominator_bound = denominator_bound or settings.DENOMINATOR_BOUND
	roots = [to_rational(a) for a in real_roots]
	if any(a <= 0 for a in roots):
		raise ValueError(f"Real roots must be positive, got {[str(a) for a in roots]}")

	polynomial = product_of_linear(roots)
	with mpmath.workprec(settings.HIGH_PRECISION_BITS):
		sector = mpmath.pi / (r + 1)
		for raw_rho, raw_phi in pair_params:
			rho = to_rational(raw_rho)
			angle = to_rational(raw_phi)
			if rho <= 0:
				raise ValueError(f"Pair modulus must be positive, got {rho}")
			if angle < 0 or _mpf(angle) >= sector:
				raise ValueError(f"Pair angle {angle} is outside [0, pi/{r + 1})")
			cosine = Fraction(int(mpmath.ceil(mpmath.cos(_mpf(angle)) * denominator_bound)), denominator_bound)
			cosine = min(cosine, Fraction(1))
			polynomial = polynomial * Polynomial([rho * rho, 2 * rho * cosine, 1])

	candidate = Sequence(values=list(polynomial.coeffs), provenance=Provenance.pf_r, provenance_param=Fraction(r))
	return verify_pf_r(candidate, r)


# ========== PF_∞ ==========

def gen_pf_inf(roots: SequenceType[RationalLike]) -> Sequence:
	"""
	Коэффициенты Π(x + a_i) по возрастанию степеней.

	Raises:
		ValueError: a_i <= 0
	"""
	values = [to_rational(a) for a in roots]
	if any(a <= 0 for a in values):
		raise ValueError(f"Roots must be positive, got {[str(a) for a in values]}")
	return Sequence(values=list(product_of_linear(values).coeffs), provenance=Provenance.pf_inf)


# ========== Q_3 ==========

def gen_q3(n: int, f0: RationalLike, beta: RationalLike, deltas: SequenceType[RationalLike], bits: Optional[int] = None) -> Sequence:
	"""
	Q_3-последовательность:
	f_k = f_0 β^k δ_2^{k-1} ... δ_k / (α_2^{k/2} α_3^{(k-1)/2} ... α_k),
	α_2 = 1 + δ_2, α_j = 1 + δ_j sqrt(α_{j-1}).

	Числитель точный, знаменатель считается в mpmath с точностью bits,
	каждый член рационализуется (limit_denominator(10**12)).

	Args:
		n: Последний индекс, n >= 1
		f0: f_0 > 0
		beta: β >= 0
		deltas: δ_2..δ_n из [0, 1] без внутренних нулей

	Raises:
		ValueError: Неверные параметры
		GeneratorRejected: После рационализации не PF_3
	"""
	if n < 1:
		raise ValueError(f"n must be at least 1, got {n}")
	f0 = to_rational(f0)
	beta = to_rational(beta)
	deltas = [to_rational(d) for d in deltas]
	if f0 <= 0:
		raise ValueError(f"f0 must be positive, got {f0}")
	if beta < 0:
		raise ValueError(f"beta must be non-negative, got {beta}")
	if len(deltas) != n - 1:
		raise ValueError(f"Expected {n - 1} deltas (delta_2..delta_n), got {len(deltas)}")
	if any(not 0 <= d <= 1 for d in deltas):
		raise ValueError(f"Deltas must lie in [0, 1], got {[str(d) for d in deltas]}")
	if has_internal_zero(deltas):
		raise ValueError("Deltas must not have internal zeros")

	bits = bits or settings.HIGH_PRECISION_BITS
	# delta[j] = δ_j, j = 2..n
	delta = {j: deltas[j - 2] for j in range(2, n + 1)}
	values = [f0, f0 * beta]
	with mpmath.workprec(bits):
		alpha = {}
		for j in range(2, n + 1):
			if j == 2:
				alpha[j] = 1 + _mpf(delta[j])
			else:
				alpha[j] = 1 + _mpf(delta[j]) * mpmath.sqrt(alpha[j - 1])
		for k in range(2, n + 1):
			numerator = f0 * beta ** k
			for j in range(2, k + 1):
				numerator *= delta[j] ** (k - j + 1)
			if numerator == 0:
				values.append(Fraction(0))
				continue
			denominator = mpmath.mpf(1)
			for j in range(2, k + 1):
				denominator *= alpha[j] ** (mpmath.mpf(k - j + 2) / 2)
			value = _rationalize(_mpf(numerator) / denominator, bits)
			values.append(value.limit_denominator(Q3_DENOMINATOR_LIMIT))

	try:
		candidate = Sequence(values=values, provenance=Provenance.q3)
	except ValueError as e:
		raise GeneratorRejected(f"Rationalized Q3 candidate is not admissible: {e}") from e
	return verify_pf_r(candidate, 3)


# ========== Проверки ==========

def check_pf_r(f, r: int) -> MinorCheckResult:
	"""
	Все миноры порядка 1..r верхнетреугольной тёплицевой матрицы T[i][j] = f_{j-i} неотрицательны.

	Перебор:
	- строки нормируются сдвигом так, что первая строка 0;
	- ненулевой минор требует i_t <= j_t <= i_t + n;
	- строки с разрывом больше n дают произведение меньших миноров и пропускаются;
	- индексы ограничены окном 0..n+r;
	- миноры порядка t+1 строятся из миноров порядка t разложением по последней строке.
	Значения масштабируются к целым общим знаменателем.

	Свидетель - первый (лексикографически) отрицательный минор наименьшего порядка,
	индексы с 1.
	"""
	if r < 1:
		raise ValueError(f"Order r must be at least 1, got {r}")
	values = values_of(f)
	n = len(values) - 1
	scale = common_denominator(values)
	ints = [int(v * scale) for v in values]
	last_index = n + r

	def entry(i: int, j: int) -> int:
		d = j - i
		if 0 <= d <= n:
			return ints[d]
		return 0

	best: Dict[str, object] = {}
	checked = 0

	def extend(minors: Dict[Tuple[int, ...], int], row: int, depth: int) -> Dict[Tuple[int, ...], int]:
		extended: Dict[Tuple[int, ...], int] = defaultdict(int)
		for cols, value in minors.items():
			for j in range(row, min(row + n, last_index) + 1):
				t = entry(row, j)
				if t == 0 or j in cols:
					continue
				position = sum(1 for c in cols if c < j)
				new_cols = cols[:position] + (j,) + cols[position:]
				sign = -1 if (depth + position) % 2 else 1
				extended[new_cols] += sign * t * value
		return {cols: value for cols, value in extended.items() if value}

	def descend(rows: Tuple[int, ...], minors: Dict[Tuple[int, ...], int]) -> None:
		nonlocal checked
		depth = len(rows)
		for cols in sorted(minors):
			checked += 1
			if minors[cols] < 0:
				best.update(order=depth, rows=rows, cols=cols, value=minors[cols])
				return
		if depth == r or (best and depth + 1 >= best["order"]):
			return
		for row in range(rows[-1] + 1, min(rows[-1] + n, last_index) + 1):
			extended = extend(minors, row, depth)
			if extended:
				descend(rows + (row,), extended)
			if best and depth + 1 >= best["order"]:
				return

	first_row = {(j,): ints[j] for j in range(n + 1) if ints[j]}
	if first_row:
		descend((0,), first_row)

	if best:
		order = best["order"]
		witness = MinorWitness(
			rows=[i + 1 for i in best["rows"]],
			cols=[j + 1 for j in best["cols"]],
			value=Fraction(best["value"], scale ** order),
		)
		logger.debug(f"PF_{r} check failed at order {order}: {witness}")
		return MinorCheckResult(order_checked=r, ok=False, witness=witness, minors_checked=checked)
	return MinorCheckResult(order_checked=r, ok=True, minors_checked=checked)


def check_pf_inf(f) -> bool:
	"""
	PF_∞ по теореме Айссен-Шёнберг-Уитни: производящий многочлен имеет только
	вещественные отрицательные корни. Ведущие нули (множитель x^s) отбрасываются.
	"""
	values = values_of(f)
	if any(v < 0 for v in values):
		return False
	while values and values[0] == 0:
		values.pop(0)
	if not values:
		return False
	polynomial = Polynomial(values)
	if polynomial.degree == 0:
		return True
	return real_rooted_negative(polynomial).holds


def check_log_concave(f, strict: bool = False) -> bool:
	"""
	f_k² >= f_{k-1} f_{k+1} (строго при strict) на внутренних точках положительного носителя;
	отрицательные значения и внутренние нули недопустимы.
	"""
	values = values_of(f)
	if any(v < 0 for v in values) or has_internal_zero(values):
		return False
	support = [i for i, v in enumerate(values) if v != 0]
	if not support:
		return False
	for k in range(support[0] + 1, support[-1]):
		left = values[k] * values[k]
		right = values[k - 1] * values[k + 1]
		if left < right or (strict and left == right):
			return False
	return True


# ========== Преобразования ==========

def _padded(values: List[Fraction], index: int) -> Fraction:
	if 0 <= index < len(values):
		return values[index]
	return Fraction(0)


def grabarek_transform(f, p: int) -> Sequence:
	"""
	g_m = C(2p-1, p) f_m² + Σ_{j=1}^{p} (-1)^j C(2p, p-j) f_{m-j} f_{m+j}, m = 0..n.

	Результат может иметь внутренние нули (например, для геометрической f),
	поэтому возвращается без проверки инвариантов.
	"""
	if p < 1:
		raise ValueError(f"p must be at least 1, got {p}")
	values = values_of(f)
	result = []
	for m in range(len(values)):
		total = binomial(2 * p - 1, p) * values[m] ** 2
		for j in range(1, p + 1):
			sign = -1 if j % 2 else 1
			total += sign * binomial(2 * p, p - j) * _padded(values, m - j) * _padded(values, m + j)
		result.append(total)
	return Sequence.unchecked(result)


def branden_operator(f, alphas: SequenceType[RationalLike], variant: BrandenVariant = BrandenVariant.diagonal) -> Sequence:
	"""
	Диагональный вариант: g_m = Σ_j α_j f_{m-j} f_{m+j}, m = 0..n.
	Внедиагональный: g_m = Σ_j α_j f_{m-j} f_{m+1+j}, m = 0..n-1.
	"""
	values = values_of(f)
	weights = [to_rational(a) for a in alphas]
	variant = BrandenVariant(variant)
	offset = 1 if variant == BrandenVariant.offdiagonal else 0
	length = len(values) - offset
	result = []
	for m in range(length):
		total = Fraction(0)
		for j, weight in enumerate(weights):
			if weight:
				total += weight * _padded(values, m - j) * _padded(values, m + offset + j)
		result.append(total)
	return Sequence.unchecked(result)
