from pydantic import BaseModel, model_validator
from typing import List, Optional
from enum import Enum

from app.schemas.common import Rational


class VerdictKind(str, Enum):
	all_coeffs_positive = "all_coeffs_positive"
	hurwitz_stable = "hurwitz_stable"
	real_rooted_negative = "real_rooted_negative"
	# Проверки доказанных утверждений (Theorem A, леммы)
	nonnegative_on_samples = "nonnegative_on_samples"
	weighted_sum_nonnegative = "weighted_sum_nonnegative"
	ratio_monotone = "ratio_monotone"


class WitnessReason(str, Enum):
	zero_polynomial = "zero_polynomial"
	degree_mismatch = "degree_mismatch"
	nonpositive_coefficient = "nonpositive_coefficient"
	hurwitz_minor_nonpositive = "hurwitz_minor_nonpositive"
	real_root_shortfall = "real_root_shortfall"
	nonnegative_root = "nonnegative_root"
	negative_value = "negative_value"
	negative_sum = "negative_sum"
	ratio_increase = "ratio_increase"


class VerdictWitness(BaseModel):
	"""
	Машиночитаемое объяснение провала.

	index - номер коэффициента, номер минора Гурвица, точка выборки или k;
	value - соответствующее значение (коэффициент, минор, Q(x), сумма);
	expected/observed - для несовпадения степени и числа вещественных корней.
	"""
	reason: WitnessReason
	index: Optional[int] = None
	value: Optional[Rational] = None
	expected: Optional[int] = None
	observed: Optional[int] = None
	point: Optional[Rational] = None


class StabilityVerdict(BaseModel):
	kind: VerdictKind
	holds: bool
	witness: Optional[VerdictWitness] = None

	@model_validator(mode="after")
	def check_witness(self) -> "StabilityVerdict":
		if self.holds != (self.witness is None):
			raise ValueError("Witness must be present exactly when the verdict fails")
		return self

	@classmethod
	def ok(cls, kind: VerdictKind) -> "StabilityVerdict":
		return cls(kind=kind, holds=True)

	@classmethod
	def fail(cls, kind: VerdictKind, reason: WitnessReason, **details) -> "StabilityVerdict":
		return cls(kind=kind, holds=False, witness=VerdictWitness(reason=reason, **details))


class Lemma1Report(BaseModel):
	"""Взвешенная сумма Σ f_k f_{n-k} M_k и проверка условий, при которых она обязана быть >= 0."""
	total: Rational
	hypotheses_hold: bool
	violations: List[str] = []
