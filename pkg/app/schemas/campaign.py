from pydantic import BaseModel, Field, model_validator
from typing import Any, Dict, List, Optional
from fractions import Fraction
from enum import Enum
import json

from app.core.config import settings
from app.schemas.common import PolynomialField, Rational
from app.schemas.generator import GeneratorKind
from app.schemas.sequence import Multiset, Sequence
from app.schemas.verdict import StabilityVerdict

REPORT_SCHEMA_VERSION = "1"

# Поля с временем выполнения не участвуют в сравнении отчётов
TIMING_FIELDS = ("elapsed_ms", "wall_time_ms")


class Conjecture(str, Enum):
	C1 = "C1"
	C2 = "C2"
	C3 = "C3"
	C4 = "C4"
	C5 = "C5"
	C6 = "C6"
	# Доказанные утверждения: провал означает ошибку в коде
	T1 = "T1"
	TA = "TA"
	L1 = "L1"
	L2 = "L2"

	@property
	def is_proved(self) -> bool:
		return self in PROVED_STATEMENTS


PROVED_STATEMENTS = (Conjecture.T1, Conjecture.TA, Conjecture.L1, Conjecture.L2)
OPEN_CONJECTURES = (Conjecture.C1, Conjecture.C2, Conjecture.C3, Conjecture.C4, Conjecture.C5, Conjecture.C6)


class TrialOutcome(str, Enum):
	holds = "holds"
	fails = "fails"
	not_applicable = "not_applicable"
	error = "error"


class RelaxMode(str, Enum):
	"""Ослабление гипотез C3 для поиска контрпримеров."""
	none = "none"
	alpha_beta = "alpha_beta"  # Q_n^{α,β} со случайными α, β на PF_∞
	log_concave = "log_concave"  # P_n на просто лог-вогнутых последовательностях


class ReportFormat(str, Enum):
	json = "json"
	csv = "csv"


class TrialRecord(BaseModel):
	"""
	Одно испытание. Повторный запуск с теми же (seed, trial_id, config)
	даёт тот же объект (кроме elapsed_ms).
	"""
	trial_id: int
	seed: int
	conjecture: Conjecture
	n: int
	r: Optional[int] = None
	alpha: Optional[Rational] = None
	beta: Optional[Rational] = None
	sequence: Optional[Sequence] = None
	polynomial: Optional[PolynomialField] = None
	verdict: Optional[StabilityVerdict] = None
	outcome: TrialOutcome
	generator: Optional[GeneratorKind] = None
	relax: RelaxMode = RelaxMode.none
	# Lemma 1: веса M_k; Lemma 2: пара мультимножеств
	weights: Optional[List[Rational]] = None
	set_a: Optional[Multiset] = None
	set_b: Optional[Multiset] = None
	# Theorem A: точки x >= 0
	sample_points: Optional[List[Rational]] = None
	observed_degree: Optional[int] = None
	secondary: List[StabilityVerdict] = []
	rejections: int = 0
	note: Optional[str] = None
	elapsed_ms: int = 0

	class Config:
		arbitrary_types_allowed = True


class ConjectureTotals(BaseModel):
	trials: int = 0
	holds: int = 0
	fails: int = 0
	not_applicable: int = 0

	@model_validator(mode="after")
	def check_sum(self) -> "ConjectureTotals":
		if self.holds + self.fails + self.not_applicable != self.trials:
			raise ValueError(f"Totals do not add up: {self.holds} + {self.fails} + {self.not_applicable} != {self.trials}")
		return self


class CounterexampleEntry(BaseModel):
	original: TrialRecord
	shrunk: TrialRecord


class TrialError(BaseModel):
	conjecture: Conjecture
	trial_id: int
	message: str


class RegressionCheck(BaseModel):
	name: str
	passed: bool
	detail: Optional[str] = None


class CampaignConfig(BaseModel):
	"""Параметры кампании; значения по умолчанию берутся из settings."""
	conjectures: List[Conjecture] = Field(default_factory=lambda: list(Conjecture))
	trials: int = Field(default_factory=lambda: settings.CAMPAIGN_TRIALS, ge=0)
	n_min: int = Field(default_factory=lambda: settings.CAMPAIGN_N_MIN, ge=2)
	n_max: int = Field(default_factory=lambda: settings.CAMPAIGN_N_MAX, ge=2)
	r_min: int = Field(default_factory=lambda: settings.CAMPAIGN_R_MIN, ge=2)
	r_max: int = Field(default_factory=lambda: settings.CAMPAIGN_R_MAX, ge=2)
	seed: int = Field(default_factory=lambda: settings.CAMPAIGN_SEED, ge=0, lt=1 << 64)
	workers: int = Field(default_factory=lambda: settings.CAMPAIGN_WORKERS, ge=1)
	# Генератор по коду гипотезы ("C4": "pf_r_sector"); иначе выбирается по умолчанию
	generators: Dict[Conjecture, GeneratorKind] = {}
	relax: RelaxMode = RelaxMode.none
	delta_min: Rational = Field(default_factory=lambda: settings.delta_min)
	denominator_bound: int = Field(default_factory=lambda: settings.DENOMINATOR_BOUND, ge=1)
	alpha_beta_max: Rational = Field(default_factory=lambda: settings.alpha_beta_max)
	alpha_beta_denominator: int = Field(default_factory=lambda: settings.ALPHA_BETA_DENOMINATOR, ge=1)
	root_log2_span: int = Field(default_factory=lambda: settings.ROOT_LOG2_SPAN, ge=0)
	max_rejections: int = Field(default_factory=lambda: settings.MAX_REJECTIONS, ge=1)
	sample_points: int = Field(default_factory=lambda: settings.SAMPLE_POINTS, ge=1)
	shrink: bool = True

	@model_validator(mode="after")
	def check_ranges(self) -> "CampaignConfig":
		if self.n_min > self.n_max:
			raise ValueError(f"n_min ({self.n_min}) must not exceed n_max ({self.n_max})")
		if self.r_min > self.r_max:
			raise ValueError(f"r_min ({self.r_min}) must not exceed r_max ({self.r_max})")
		if not Fraction(0) < self.delta_min < 1:
			raise ValueError(f"delta_min must lie in (0, 1), got {self.delta_min}")
		if self.alpha_beta_max <= 0:
			raise ValueError(f"alpha_beta_max must be positive, got {self.alpha_beta_max}")
		return self


class CampaignReport(BaseModel):
	schema_version: str = REPORT_SCHEMA_VERSION
	config: CampaignConfig
	totals: Dict[Conjecture, ConjectureTotals] = {}
	counterexamples: List[CounterexampleEntry] = []
	rejections: Dict[Conjecture, int] = {}
	errors: List[TrialError] = []
	regression: List[RegressionCheck] = []
	caveats: List[str] = []
	exit_code: int = 0
	wall_time_ms: int = 0

	def canonical_dict(self) -> Dict[str, Any]:
		"""Отчёт без полей времени: одинаковые запуски дают одинаковый словарь."""
		return _strip_timing(self.model_dump(mode="json"))

	def canonical_json(self) -> str:
		return json.dumps(self.canonical_dict(), sort_keys=True, indent=2, ensure_ascii=False)


def _strip_timing(value: Any) -> Any:
	if isinstance(value, dict):
		return {key: _strip_timing(item) for key, item in value.items() if key not in TIMING_FIELDS}
	if isinstance(value, list):
		return [_strip_timing(item) for item in value]
	return value
