"""
Случайный выбор входов из классов гипотез.

Все функции получают явный random.Random; при одном и том же генераторе
результат один и тот же. Генераторы, которые могут отбросить кандидата,
повторяются до max_rejections раз; число отказов возвращается вызывающему.
"""
from fractions import Fraction
from functools import partial
from typing import Callable, List, Optional, Tuple, TypeVar
import logging
import math
import random

from app.core.detpoly import reciprocal_pochhammer_sequence
from app.core.pfgen import (
	GeneratorRejected,
	gen_pf2,
	gen_pf_inf,
	gen_pf_r_cosbound,
	gen_pf_r_sector,
	gen_q3,
	kv_bound,
	sector_angle_bound,
)
from app.core.rng import trial_rng
from app.core.rootcheck import weak_supermajorized
from app.schemas.campaign import CampaignConfig
from app.schemas.generator import GeneratorKind, GeneratorSpec
from app.schemas.sequence import Multiset, Sequence

logger = logging.getLogger(__name__)

T = TypeVar("T")


class GeneratorExhausted(RuntimeError):
	"""Генератор отказал max_rejections раз подряд."""

	def __init__(self, kind: str, rejections: int):
		super().__init__(f"Generator {kind} rejected {rejections} candidates in a row")
		self.rejections = rejections


# ========== Базовые распределения ==========

def uniform_rational(
	rng: random.Random,
	lo: Fraction,
	hi: Fraction,
	denominator_bound: int,
	include_lo: bool = True,
	include_hi: bool = True,
) -> Fraction:
	"""
	Случайное p/q из [lo, hi] с q <= denominator_bound.

	Сначала равновероятно выбирается знаменатель среди тех, для которых на
	отрезке есть хотя бы одна дробь, затем числитель.

	Raises:
		ValueError: На отрезке нет ни одной подходящей дроби
	"""
	lo = Fraction(lo)
	hi = Fraction(hi)
	ranges = []
	for q in range(1, denominator_bound + 1):
		p_lo = math.ceil(lo * q)
		p_hi = math.floor(hi * q)
		if not include_lo and Fraction(p_lo, q) == lo:
			p_lo += 1
		if not include_hi and Fraction(p_hi, q) == hi:
			p_hi -= 1
		if p_lo <= p_hi:
			ranges.append((q, p_lo, p_hi))
	if not ranges:
		raise ValueError(f"No rational with denominator <= {denominator_bound} in [{lo}, {hi}]")
	q, p_lo, p_hi = rng.choice(ranges)
	return Fraction(rng.randint(p_lo, p_hi), q)


def log_uniform_positive(rng: random.Random, span: int, denominator_bound: int) -> Fraction:
	"""m·2^e, m из [1, 2], e из [-span, span-1]: значения в [2^-span, 2^span]."""
	mantissa = uniform_rational(rng, Fraction(1), Fraction(2), denominator_bound)
	if span == 0:
		return mantissa
	return mantissa * Fraction(2) ** rng.randint(-span, span - 1)


def with_rejections(kind: str, draw: Callable[[], T], max_rejections: int) -> Tuple[T, int]:
	"""
	Повторяет draw(), пока он бросает GeneratorRejected.

	Returns:
		(результат, число отказов)

	Raises:
		GeneratorExhausted: Отказов больше max_rejections
	"""
	rejections = 0
	while True:
		try:
			return draw(), rejections
		except GeneratorRejected as e:
			rejections += 1
			logger.debug(f"{kind} candidate rejected ({rejections}/{max_rejections}): {e}")
			if rejections >= max_rejections:
				raise GeneratorExhausted(kind, rejections) from e


# ========== Классы гипотез ==========

def _deltas(rng: random.Random, count: int, lo: Fraction, hi: Fraction, denominator_bound: int, include_hi: bool) -> List[Fraction]:
	return [uniform_rational(rng, lo, hi, denominator_bound, include_hi=include_hi) for _ in range(count)]


def sample_log_concave(rng: random.Random, n: int, config: CampaignConfig, strict: bool = True) -> Sequence:
	"""
	PF_2 через δ из [delta_min, 1) (strict) или [delta_min, 1].

	f_0 выбирается из [1/2, 2].
	"""
	f0 = uniform_rational(rng, Fraction(1, 2), Fraction(2), config.denominator_bound)
	deltas = _deltas(rng, n, config.delta_min, Fraction(1), config.denominator_bound, include_hi=not strict)
	return gen_pf2(n, f0, deltas)


def sample_geometric(rng: random.Random, n: int, config: CampaignConfig) -> Sequence:
	q = log_uniform_positive(rng, config.root_log2_span, config.denominator_bound)
	f0 = uniform_rational(rng, Fraction(1, 2), Fraction(2), config.denominator_bound)
	return Sequence.geometric(n, q, f0)


def sample_roots(rng: random.Random, count: int, config: CampaignConfig) -> List[Fraction]:
	return [log_uniform_positive(rng, config.root_log2_span, config.denominator_bound) for _ in range(count)]


def sample_pf_inf(rng: random.Random, n: int, config: CampaignConfig) -> Sequence:
	"""Коэффициенты Π(x + a_i) со случайными a_i > 0 (логарифмически равномерно)."""
	return gen_pf_inf(sample_roots(rng, n, config))


def sample_pf_r_cosbound(rng: random.Random, n: int, r: int, config: CampaignConfig) -> Sequence:
	"""δ из [delta_min·c_r, c_r]."""
	bound = kv_bound(r)
	f0 = uniform_rational(rng, Fraction(1, 2), Fraction(2), config.denominator_bound)
	deltas = _deltas(rng, n, config.delta_min * bound, bound, config.denominator_bound, include_hi=True)
	return gen_pf_r_cosbound(n, r, f0, deltas)


def sample_pf_r_sector(rng: random.Random, n: int, r: int, config: CampaignConfig) -> Sequence:
	"""Степень n делится между вещественными корнями и парами комплексно-сопряжённых корней в секторе."""
	pairs = rng.randint(0, n // 2)
	real_roots = sample_roots(rng, n - 2 * pairs, config)
	bound = sector_angle_bound(r)
	pair_params = []
	for _ in range(pairs):
		rho = log_uniform_positive(rng, config.root_log2_span, config.denominator_bound)
		share = uniform_rational(rng, Fraction(0), Fraction(1), config.denominator_bound, include_hi=False)
		pair_params.append((rho, bound * share))
	return gen_pf_r_sector(r, real_roots, pair_params, config.denominator_bound)


def sample_q3(rng: random.Random, n: int, config: CampaignConfig) -> Sequence:
	beta = uniform_rational(rng, Fraction(1, config.denominator_bound), Fraction(2), config.denominator_bound)
	deltas = _deltas(rng, max(n - 1, 0), config.delta_min, Fraction(1), config.denominator_bound, include_hi=True)
	return gen_q3(n, Fraction(1), beta, deltas)


def sample_reciprocal_pochhammer(rng: random.Random, n: int, config: CampaignConfig) -> Sequence:
	c = uniform_rational(rng, Fraction(1, config.denominator_bound), Fraction(4), config.denominator_bound)
	return reciprocal_pochhammer_sequence(c, n)


def sample_alpha_beta(rng: random.Random, config: CampaignConfig) -> Tuple[Fraction, Fraction]:
	"""α, β из (0, alpha_beta_max] со знаменателем <= alpha_beta_denominator."""
	draw = partial(uniform_rational, rng, Fraction(0), config.alpha_beta_max, config.alpha_beta_denominator, include_lo=False)
	return draw(), draw()


def sample_sequence(
	rng: random.Random,
	kind: GeneratorKind,
	n: int,
	config: CampaignConfig,
	r: Optional[int] = None,
	strict: bool = True,
) -> Tuple[Sequence, int]:
	"""
	Последовательность заданного генератора с учётом отказов.

	Returns:
		(последовательность, число отказов)
	"""
	if kind == GeneratorKind.pf2:
		draw = partial(sample_log_concave, rng, n, config, strict=strict)
	elif kind == GeneratorKind.pf_inf_roots:
		draw = partial(sample_pf_inf, rng, n, config)
	elif kind == GeneratorKind.pf_r_cosbound:
		draw = partial(sample_pf_r_cosbound, rng, n, r, config)
	elif kind == GeneratorKind.pf_r_sector:
		draw = partial(sample_pf_r_sector, rng, n, r, config)
	elif kind == GeneratorKind.q3:
		draw = partial(sample_q3, rng, n, config)
	elif kind == GeneratorKind.geometric:
		draw = partial(sample_geometric, rng, n, config)
	elif kind == GeneratorKind.ones:
		draw = partial(Sequence.ones, n)
	elif kind == GeneratorKind.reciprocal_pochhammer:
		draw = partial(sample_reciprocal_pochhammer, rng, n, config)
	else:
		raise ValueError(f"Unknown generator {kind}")
	return with_rejections(kind.value, draw, config.max_rejections)


def generate_from_spec(spec: GeneratorSpec, count: int = 1, config: Optional[CampaignConfig] = None) -> List[Sequence]:
	"""
	count последовательностей по GeneratorSpec; i-я использует поток (spec.seed, i).

	Явные q (geometric) и c (reciprocal_pochhammer) в спецификации имеют приоритет.
	"""
	config = (config or CampaignConfig()).model_copy(
		update={"delta_min": spec.delta_min, "denominator_bound": spec.denominator_bound}
	)
	result = []
	for index in range(count):
		rng = trial_rng(spec.seed, index, spec.kind.value)
		if spec.kind == GeneratorKind.geometric and spec.q is not None:
			result.append(Sequence.geometric(spec.n, spec.q))
		elif spec.kind == GeneratorKind.reciprocal_pochhammer and spec.c is not None:
			result.append(reciprocal_pochhammer_sequence(spec.c, spec.n))
		else:
			sequence, rejections = sample_sequence(rng, spec.kind, spec.n, config, r=spec.r, strict=spec.strict)
			if rejections:
				logger.info(f"Generator {spec.kind.value}: {rejections} rejections before sequence {index}")
			result.append(sequence)
	return result


# ========== Входы для лемм ==========

def sample_lemma1_weights(rng: random.Random, n: int, config: CampaignConfig, balanced: bool = False) -> List[Fraction]:
	"""
	M_0..M_{n/2} с одной переменой знака (сначала отрицательные), M_last > 0 и ΣM >= 0.

	При balanced сумма ровно 0.
	"""
	size = n // 2 + 1
	if size < 2:
		raise ValueError(f"Lemma 1 weights need n >= 2, got n={n}")
	bound = config.denominator_bound
	split = rng.randint(1, size - 1)
	weights = [-uniform_rational(rng, Fraction(1, bound), Fraction(1), bound) for _ in range(split)]
	weights += [uniform_rational(rng, Fraction(1, bound), Fraction(1), bound) for _ in range(size - split)]
	total = sum(weights)
	if balanced:
		# Масштабирование отрицательной части сохраняет знаки
		negative = -sum(weights[:split])
		positive = sum(weights[split:])
		weights[:split] = [w * positive / negative for w in weights[:split]]
	elif total < 0:
		weights[-1] -= total
		weights[-1] += uniform_rational(rng, Fraction(0), Fraction(1), bound)
	return weights


def sample_supermajorized_pair(rng: random.Random, size: int, config: CampaignConfig) -> Tuple[Multiset, Multiset]:
	"""
	(B, A) с B ≺^W A.

	B получается из A неотрицательными добавками к отсортированным элементам
	и усреднением случайных пар (перенос от большего к меньшему).
	"""
	bound = config.denominator_bound
	a = sorted(uniform_rational(rng, Fraction(1, bound), Fraction(4), bound) for _ in range(size))
	b = [value + uniform_rational(rng, Fraction(0), Fraction(1), bound) * rng.randint(0, 1) for value in a]
	for _ in range(rng.randint(0, size)):
		if size < 2:
			break
		i, j = sorted(rng.sample(range(size), 2))
		b = sorted(b)
		mean = (b[i] + b[j]) / 2
		b[i] = b[j] = mean
	A = Multiset.of(a)
	B = Multiset.of(b)
	if not weak_supermajorized(B, A):
		raise RuntimeError(f"Constructed pair is not supermajorized: A={a}, B={b}")
	return B, A
