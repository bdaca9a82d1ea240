"""
Построение многочлена по прямым параметрам и текстовый вывод для CLI.
"""
from fractions import Fraction
from typing import List, Optional
import logging

from app.core.detpoly import build_P, build_P_r, build_Q
from app.core.exactmath import Polynomial
from app.core.rootcheck import coeffs_positive, hurwitz_stable, real_rooted_negative
from app.schemas.campaign import TrialRecord
from app.schemas.polynomial import ExpandMode
from app.schemas.verdict import StabilityVerdict

logger = logging.getLogger(__name__)


def expand_polynomial(
	mode: ExpandMode,
	n: int,
	f: List[Fraction],
	r: Optional[int] = None,
	alpha: Optional[Fraction] = None,
	beta: Optional[Fraction] = None,
) -> Polynomial:
	"""
	Q_n^{α,β}, P_n или P_n^r.

	Raises:
		ValueError: Не хватает параметров режима или их значения недопустимы
	"""
	mode = ExpandMode(mode)
	if mode == ExpandMode.Q:
		if alpha is None or beta is None:
			raise ValueError("Mode Q needs alpha and beta")
		return build_Q(n, alpha, beta, f)
	if mode == ExpandMode.P:
		return build_P(n, f)
	if r is None:
		raise ValueError("Mode Pr needs r")
	return build_P_r(n, r, f)


def analyze(p: Polynomial) -> List[StabilityVerdict]:
	"""Три вердикта по сырому многочлену; для нулевого - пусто."""
	if p.is_zero:
		return []
	return [coeffs_positive(p), hurwitz_stable(p), real_rooted_negative(p)]


def _yes_no(verdict: StabilityVerdict) -> str:
	return "yes" if verdict.holds else "no"


def render_expansion(p: Polynomial) -> str:
	"""
	"18 + 18x; degree 1; coeffs_positive: yes; hurwitz_stable: yes; real_rooted_negative: yes"
	или "0 (zero polynomial)".
	"""
	if p.is_zero:
		return "0 (zero polynomial)"
	positive, stable, real_negative = analyze(p)
	return (
		f"{p.format()}; degree {p.degree}; coeffs_positive: {_yes_no(positive)}; "
		f"hurwitz_stable: {_yes_no(stable)}; real_rooted_negative: {_yes_no(real_negative)}"
	)


def render_trial(record: TrialRecord) -> str:
	"""Однострочный итог проверки: утверждение, исход, свидетель и многочлен."""
	parts = [f"{record.conjecture.value} n={record.n}"]
	if record.r is not None:
		parts.append(f"r={record.r}")
	parts.append(record.outcome.value)
	if record.note:
		parts.append(f"({record.note})")
	if record.verdict is not None and record.verdict.witness is not None:
		witness = record.verdict.witness
		details = ", ".join(
			f"{name}={value}"
			for name, value in witness.model_dump(mode="json", exclude_none=True).items()
			if name != "reason"
		)
		parts.append(f"[{witness.reason.value}{': ' + details if details else ''}]")
	if record.polynomial is not None:
		parts.append(f"; {render_expansion(record.polynomial)}")
	return " ".join(parts)
