"""
Жадное упрощение провального испытания.

Кандидат принимается, если вход остаётся в классе гипотезы, утверждение
по-прежнему не выполняется и кандидат "меньше" текущего: сначала по n,
затем по суммарной битовой длине всех рациональных входов.
"""
from fractions import Fraction
from typing import Iterator, List, Optional, Tuple
import logging

from app.core.pfgen import gen_pf2, recover_deltas
from app.schemas.campaign import Conjecture, TrialOutcome, TrialRecord
from app.schemas.sequence import Sequence
from app.services.trials import AnalyzerInconsistency, evaluate_record, minimal_n

logger = logging.getLogger(__name__)

SIMPLE_DENOMINATORS = (1, 2, 4, 8, 16)
MAX_EVALUATIONS = 400


def _bits(value: Fraction) -> int:
	return abs(value.numerator).bit_length() + value.denominator.bit_length()


def complexity(record: TrialRecord) -> Tuple[int, int]:
	total = 0
	if record.sequence is not None:
		total += sum(_bits(v) for v in record.sequence.values)
	for value in (record.alpha, record.beta):
		if value is not None:
			total += _bits(value)
	return record.n, total


def _simpler(value: Fraction) -> List[Fraction]:
	options = []
	for bound in SIMPLE_DENOMINATORS:
		candidate = value.limit_denominator(bound)
		if candidate != value and candidate not in options:
			options.append(candidate)
	return options


def _with_values(record: TrialRecord, values: List[Fraction]) -> Optional[TrialRecord]:
	try:
		sequence = Sequence.of(values)
	except ValueError:
		return None
	return record.model_copy(update={"sequence": sequence, "n": sequence.n})


def _candidates(record: TrialRecord) -> Iterator[Optional[TrialRecord]]:
	values = list(record.sequence.values)
	n = record.n
	if n - 1 >= minimal_n(record.conjecture, record.r):
		yield _with_values(record, values[:-1])
		yield _with_values(record, values[1:])

	try:
		deltas = recover_deltas(values)
	except ValueError:
		deltas = []
	for index, delta in enumerate(deltas):
		for simpler in _simpler(delta):
			changed = deltas[:index] + [simpler] + deltas[index + 1:]
			try:
				sequence = gen_pf2(n, values[0], changed)
			except ValueError:
				continue
			yield record.model_copy(update={"sequence": sequence})

	for index, value in enumerate(values):
		for simpler in _simpler(value):
			if simpler > 0:
				yield _with_values(record, values[:index] + [simpler] + values[index + 1:])

	for name in ("alpha", "beta"):
		value = getattr(record, name)
		if value is None:
			continue
		for simpler in [Fraction(1)] + _simpler(value):
			if simpler > 0 and simpler != value:
				yield record.model_copy(update={name: simpler})


def shrink(record: TrialRecord) -> TrialRecord:
	"""
	Наименьшее найденное провальное испытание, полученное из record.

	Пробует уменьшить n (обрезка с конца и сдвиг без f_0), округлить δ и
	значения f_k, упростить α и β. Возвращает record, если меньшего
	провала нет.

	Raises:
		ValueError: Испытание не провальное
	"""
	if record.outcome != TrialOutcome.fails or record.verdict is None or record.verdict.holds:
		raise ValueError(f"shrink needs a failing trial, got outcome {record.outcome.value}")
	if record.conjecture in (Conjecture.L1, Conjecture.L2) or record.sequence is None:
		return record

	current = record
	evaluations = 0
	improved = True
	while improved and evaluations < MAX_EVALUATIONS:
		improved = False
		for candidate in _candidates(current):
			if candidate is None or complexity(candidate) >= complexity(current):
				continue
			evaluations += 1
			try:
				result = evaluate_record(candidate)
			except (ValueError, AnalyzerInconsistency) as e:
				logger.debug(f"Shrink candidate skipped: {e}")
				continue
			if result.outcome == TrialOutcome.fails:
				current = result
				improved = True
				break
			if evaluations >= MAX_EVALUATIONS:
				break

	logger.info(
		f"Shrunk {record.conjecture.value} trial {record.trial_id}: "
		f"n {record.n} -> {current.n}, {evaluations} candidates evaluated"
	)
	return current
