"""
Одно испытание гипотезы: выбор входа, построение многочлена, вердикт.

Запись TrialRecord хранит все входы, поэтому replay() пересчитывает её
без генератора случайных чисел.
"""
from fractions import Fraction
from typing import List, Optional, Tuple
import logging
import random
import time

from app.core.detpoly import build_P, build_P_r, build_Q
from app.core.exactmath import Polynomial
from app.core.pfgen import check_log_concave, check_pf_inf, check_pf_r
from app.core.rng import derive_seed
from app.core.rootcheck import (
	coeffs_positive,
	cross_implications,
	esp_ratio_decreases,
	hurwitz_stable,
	lemma1_check,
	real_rooted_negative,
	weak_supermajorized,
)
from app.schemas.campaign import CampaignConfig, Conjecture, RelaxMode, TrialOutcome, TrialRecord
from app.schemas.generator import GeneratorKind
from app.schemas.sequence import Sequence
from app.schemas.verdict import StabilityVerdict, VerdictKind, WitnessReason
from app.services import sampling
from app.services.sampling import GeneratorExhausted

logger = logging.getLogger(__name__)

OUTSIDE_HYPOTHESIS = "sequence outside the hypothesis class"

DEFAULT_GENERATORS = {
	Conjecture.C1: GeneratorKind.pf2,
	Conjecture.C2: GeneratorKind.pf2,
	Conjecture.C3: GeneratorKind.pf_inf_roots,
	Conjecture.C6: GeneratorKind.pf_inf_roots,
	Conjecture.T1: GeneratorKind.pf2,
	Conjecture.TA: GeneratorKind.pf2,
	Conjecture.L1: GeneratorKind.pf2,
}

PF_R_CONJECTURES = (Conjecture.C4, Conjecture.C5, Conjecture.C6)
LEMMA2_MAX_SIZE = 8


class AnalyzerInconsistency(RuntimeError):
	"""Нарушена цепочка: вещественные отрицательные корни ⇒ Гурвиц ⇒ положительные коэффициенты."""
	pass


# ========== Гипотезы ==========

def _positive_ends(sequence: Sequence) -> bool:
	return sequence.values[0] > 0 and sequence.values[-1] > 0


def is_geometric(sequence: Sequence) -> bool:
	"""f_k = f_0 q^k с q > 0."""
	values = sequence.values
	if any(v <= 0 for v in values):
		return False
	return all(values[k] * values[k] == values[k - 1] * values[k + 1] for k in range(1, len(values) - 1))


def hypothesis_holds(record: TrialRecord) -> bool:
	"""Принадлежит ли вход записи классу гипотезы её утверждения."""
	sequence = record.sequence
	conjecture = record.conjecture
	if conjecture == Conjecture.L2:
		return record.set_a is not None and record.set_b is not None and weak_supermajorized(record.set_b, record.set_a)
	if sequence is None or sequence.n != record.n:
		return False
	if conjecture in (Conjecture.C1, Conjecture.C2, Conjecture.T1):
		return _positive_ends(sequence) and check_log_concave(sequence, strict=True)
	if conjecture in (Conjecture.TA, Conjecture.L1):
		return check_log_concave(sequence, strict=False)
	if conjecture == Conjecture.C3:
		if record.relax == RelaxMode.log_concave:
			return check_log_concave(sequence, strict=False)
		return check_pf_inf(sequence)
	if conjecture == Conjecture.C6:
		return check_pf_inf(sequence)
	if conjecture in (Conjecture.C4, Conjecture.C5):
		return record.r is not None and check_pf_r(sequence, record.r).ok
	return False


# ========== Анализ ==========

def _analyze(kind: VerdictKind, polynomial: Polynomial) -> StabilityVerdict:
	"""Гурвиц или вещественные корни; нулевой многочлен - находка, а не ошибка."""
	if polynomial.is_zero:
		return StabilityVerdict.fail(kind, WitnessReason.zero_polynomial)
	if kind == VerdictKind.hurwitz_stable:
		return hurwitz_stable(polynomial)
	return real_rooted_negative(polynomial)


def check_cross_implications(polynomial: Polynomial) -> List[StabilityVerdict]:
	"""
	Все три вердикта для ненулевого многочлена.

	Raises:
		AnalyzerInconsistency: Нарушена цепочка импликаций
	"""
	if polynomial.is_zero:
		return []
	positive, stable, real_negative = cross_implications(polynomial)
	if real_negative.holds and not stable.holds:
		raise AnalyzerInconsistency(f"{polynomial.format()} is real-rooted negative but not Hurwitz stable")
	if stable.holds and not positive.holds:
		raise AnalyzerInconsistency(f"{polynomial.format()} is Hurwitz stable but has a non-positive coefficient")
	return [positive, stable, real_negative]


def _polynomial_for(record: TrialRecord) -> Polynomial:
	conjecture = record.conjecture
	if conjecture in (Conjecture.C1, Conjecture.C2, Conjecture.TA):
		return build_Q(record.n, record.alpha, record.beta, record.sequence)
	if conjecture == Conjecture.C3 and record.relax == RelaxMode.alpha_beta:
		return build_Q(record.n, record.alpha, record.beta, record.sequence)
	if conjecture in (Conjecture.C3, Conjecture.T1):
		return build_P(record.n, record.sequence)
	return build_P_r(record.n, record.r, record.sequence)


def _verdict_for(record: TrialRecord, polynomial: Polynomial) -> StabilityVerdict:
	conjecture = record.conjecture
	n = record.n
	if conjecture in (Conjecture.C1, Conjecture.T1):
		return coeffs_positive(polynomial, expected_degree=n - 2)
	if conjecture == Conjecture.C4:
		return coeffs_positive(polynomial, expected_degree=n - record.r * (record.r - 1))
	if conjecture in (Conjecture.C2, Conjecture.C5):
		return _analyze(VerdictKind.hurwitz_stable, polynomial)
	return _analyze(VerdictKind.real_rooted_negative, polynomial)


def _sample_verdict(record: TrialRecord, polynomial: Polynomial) -> StabilityVerdict:
	kind = VerdictKind.nonnegative_on_samples
	for index, point in enumerate(record.sample_points or []):
		value = polynomial.evaluate(point)
		if value < 0:
			return StabilityVerdict.fail(kind, WitnessReason.negative_value, index=index, point=point, value=value)
	return StabilityVerdict.ok(kind)


def _lemma1_verdict(record: TrialRecord) -> Tuple[Optional[StabilityVerdict], Optional[str]]:
	report = lemma1_check(record.sequence, record.weights)
	if not report.hypotheses_hold:
		return None, ", ".join(report.violations)
	kind = VerdictKind.weighted_sum_nonnegative
	if report.total < 0:
		return StabilityVerdict.fail(kind, WitnessReason.negative_sum, value=report.total), None
	# Равенство допустимо только для геометрической f и ΣM = 0
	if report.total == 0 and all(v > 0 for v in record.sequence.values):
		if not (is_geometric(record.sequence) and sum(record.weights) == 0):
			return StabilityVerdict.fail(kind, WitnessReason.negative_sum, value=report.total), None
	return StabilityVerdict.ok(kind), None


def _lemma2_verdict(record: TrialRecord) -> StabilityVerdict:
	kind = VerdictKind.ratio_monotone
	for k in range(1, len(record.set_a) + 1):
		if not esp_ratio_decreases(record.set_b, record.set_a, k):
			return StabilityVerdict.fail(kind, WitnessReason.ratio_increase, index=k)
	return StabilityVerdict.ok(kind)


def evaluate_record(record: TrialRecord) -> TrialRecord:
	"""
	Пересчитывает многочлен и вердикт по входам записи.

	Raises:
		AnalyzerInconsistency: Анализаторы противоречат друг другу
	"""
	update = {"polynomial": None, "verdict": None, "secondary": [], "observed_degree": None, "note": None}
	if not hypothesis_holds(record):
		update.update(outcome=TrialOutcome.not_applicable, note=OUTSIDE_HYPOTHESIS)
		return record.model_copy(update=update)

	conjecture = record.conjecture
	if conjecture == Conjecture.L1:
		verdict, note = _lemma1_verdict(record)
		if verdict is None:
			update.update(outcome=TrialOutcome.not_applicable, note=note)
			return record.model_copy(update=update)
	elif conjecture == Conjecture.L2:
		verdict = _lemma2_verdict(record)
	else:
		polynomial = _polynomial_for(record)
		update.update(polynomial=polynomial, observed_degree=polynomial.degree)
		if conjecture in PF_R_CONJECTURES and record.n < record.r * (record.r - 1):
			update.update(outcome=TrialOutcome.not_applicable, note=f"n < r(r-1) = {record.r * (record.r - 1)}")
			return record.model_copy(update=update)
		if conjecture == Conjecture.TA:
			verdict = _sample_verdict(record, polynomial)
		else:
			verdict = _verdict_for(record, polynomial)
			update["secondary"] = check_cross_implications(polynomial)

	update.update(verdict=verdict, outcome=TrialOutcome.holds if verdict.holds else TrialOutcome.fails)
	return record.model_copy(update=update)


def replay(record: TrialRecord) -> TrialRecord:
	"""Повторная оценка сохранённой записи по её собственным данным."""
	# Исчерпание генератора и ошибки не оставляют входов
	if record.sequence is None and record.set_a is None:
		return record
	replayed = evaluate_record(record)
	return replayed.model_copy(update={"elapsed_ms": record.elapsed_ms})


# ========== Выбор входа ==========

def minimal_n(conjecture: Conjecture, r: Optional[int] = None) -> int:
	if conjecture in (Conjecture.C1, Conjecture.C2, Conjecture.C3, Conjecture.T1):
		return 3
	if conjecture in PF_R_CONJECTURES:
		return max(r * (r - 1), 2)
	if conjecture == Conjecture.L2:
		return 1
	return 2


def generator_for(conjecture: Conjecture, trial_id: int, config: CampaignConfig) -> GeneratorKind:
	if conjecture in config.generators:
		return config.generators[conjecture]
	if conjecture == Conjecture.C3 and config.relax == RelaxMode.log_concave:
		return GeneratorKind.pf2
	if conjecture in (Conjecture.C4, Conjecture.C5):
		# Катков-Вишнякова и сектор по очереди
		return GeneratorKind.pf_r_cosbound if trial_id % 2 == 0 else GeneratorKind.pf_r_sector
	return DEFAULT_GENERATORS[conjecture]


def draw_record(conjecture: Conjecture, trial_id: int, seed: int, rng: random.Random, config: CampaignConfig) -> TrialRecord:
	"""
	Случайный вход испытания без вычисления вердикта.

	Для C4-C6 сначала выбирается r, затем n из [max(n_min, r(r-1)), n_max];
	если отрезок пуст, n берётся из [n_min, n_max] и испытание оценивается как
	неприменимое с записью наблюдённой степени.

	Raises:
		GeneratorExhausted: Генератор исчерпал лимит отказов
	"""
	base = {"trial_id": trial_id, "seed": seed, "conjecture": conjecture, "outcome": TrialOutcome.not_applicable, "relax": RelaxMode.none}

	if conjecture == Conjecture.L2:
		size = rng.randint(1, max(1, min(LEMMA2_MAX_SIZE, config.n_max)))
		set_b, set_a = sampling.sample_supermajorized_pair(rng, size, config)
		return TrialRecord(n=size, set_a=set_a, set_b=set_b, **base)

	r = None
	if conjecture in PF_R_CONJECTURES:
		r = rng.randint(config.r_min, config.r_max)
	lo = max(config.n_min, minimal_n(conjecture, r))
	if lo > config.n_max:
		lo = max(config.n_min, 2)
	n = rng.randint(lo, config.n_max)

	kind = generator_for(conjecture, trial_id, config)
	sequence = None
	rejections = 0
	weights = None
	if conjecture == Conjecture.L1 and rng.randint(0, 3) == 0:
		# Геометрические f с ΣM = 0 проверяют случай равенства
		sequence = sampling.sample_geometric(rng, n, config)
		weights = sampling.sample_lemma1_weights(rng, n, config, balanced=True)
	else:
		strict = conjecture in (Conjecture.C1, Conjecture.C2, Conjecture.T1)
		if conjecture == Conjecture.TA and rng.randint(0, 4) == 0:
			sequence = sampling.sample_geometric(rng, n, config)
		else:
			sequence, rejections = sampling.sample_sequence(rng, kind, n, config, r=r, strict=strict)
		if conjecture == Conjecture.L1:
			weights = sampling.sample_lemma1_weights(rng, n, config)

	relax = RelaxMode.none
	alpha = beta = None
	if conjecture in (Conjecture.C1, Conjecture.C2, Conjecture.TA):
		alpha, beta = sampling.sample_alpha_beta(rng, config)
	elif conjecture == Conjecture.C3:
		relax = config.relax
		if relax == RelaxMode.alpha_beta:
			alpha, beta = sampling.sample_alpha_beta(rng, config)

	sample_points = None
	if conjecture == Conjecture.TA:
		sample_points = [
			sampling.uniform_rational(rng, Fraction(0), Fraction(10), config.denominator_bound, include_lo=False)
			for _ in range(config.sample_points)
		]

	base["relax"] = relax
	return TrialRecord(
		n=n,
		r=r,
		alpha=alpha,
		beta=beta,
		sequence=sequence,
		generator=kind,
		weights=weights,
		sample_points=sample_points,
		rejections=rejections,
		**base,
	)


def evaluate_trial(conjecture: Conjecture, trial_id: int, config: CampaignConfig) -> TrialRecord:
	"""
	Полное испытание с номером trial_id; результат зависит только от (config, conjecture, trial_id).

	Исключения не выходят наружу: исчерпание генератора даёт not_applicable,
	остальные ошибки - outcome=error с текстом в note.
	"""
	seed = derive_seed(config.seed, trial_id, conjecture.value)
	rng = random.Random(seed)
	start = time.perf_counter()
	try:
		record = evaluate_record(draw_record(conjecture, trial_id, seed, rng, config))
	except GeneratorExhausted as e:
		logger.info(f"{conjecture.value} trial {trial_id}: {e}")
		record = TrialRecord(
			trial_id=trial_id,
			seed=seed,
			conjecture=conjecture,
			n=0,
			outcome=TrialOutcome.not_applicable,
			rejections=e.rejections,
			note=str(e),
		)
	except Exception as e:
		logger.error(f"{conjecture.value} trial {trial_id} failed: {e}", exc_info=True)
		record = TrialRecord(
			trial_id=trial_id,
			seed=seed,
			conjecture=conjecture,
			n=0,
			outcome=TrialOutcome.error,
			note=f"{type(e).__name__}: {e}",
		)
	elapsed_ms = int((time.perf_counter() - start) * 1000)
	logger.debug(f"{conjecture.value} trial {trial_id}: {record.outcome.value} in {elapsed_ms} ms")
	return record.model_copy(update={"elapsed_ms": elapsed_ms})


def check_input(
	conjecture: Conjecture,
	n: int,
	sequence: Sequence,
	r: Optional[int] = None,
	alpha: Optional[Fraction] = None,
	beta: Optional[Fraction] = None,
	relax: RelaxMode = RelaxMode.none,
	sample_points: Optional[List[Fraction]] = None,
	weights: Optional[List[Fraction]] = None,
) -> TrialRecord:
	"""
	Проверка одного заданного входа (команда check).

	Raises:
		ValueError: Не хватает параметров для выбранного утверждения
	"""
	if conjecture == Conjecture.L2:
		raise ValueError("L2 has no sequence input; use a campaign instead")
	needs_alpha_beta = conjecture in (Conjecture.C1, Conjecture.C2, Conjecture.TA) or (
		conjecture == Conjecture.C3 and relax == RelaxMode.alpha_beta
	)
	if needs_alpha_beta and (alpha is None or beta is None):
		raise ValueError(f"{conjecture.value} needs both alpha and beta")
	if conjecture in (Conjecture.C4, Conjecture.C5, Conjecture.C6) and r is None:
		raise ValueError(f"{conjecture.value} needs r")
	if conjecture == Conjecture.L1 and weights is None:
		raise ValueError("L1 needs weights M")
	if conjecture == Conjecture.TA and sample_points is None:
		from app.core.config import settings
		sample_points = [Fraction(k, 2) for k in range(1, settings.SAMPLE_POINTS + 1)]
	if sequence.n < n:
		raise ValueError(f"Sequence of length {len(sequence.values)} is too short for n={n}")

	record = TrialRecord(
		trial_id=0,
		seed=0,
		conjecture=conjecture,
		n=n,
		r=r,
		alpha=alpha,
		beta=beta,
		sequence=sequence.truncate(n),
		relax=relax,
		weights=weights,
		sample_points=sample_points,
		outcome=TrialOutcome.not_applicable,
	)
	return evaluate_record(record)
