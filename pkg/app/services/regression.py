"""
Фиксированный набор тождеств. Любой провал означает ошибку в коде, а не находку.

Случайные входы берутся из собственных потоков trial_rng(REGRESSION_SEED, i, имя),
поэтому провал воспроизводится по имени проверки.
"""
from fractions import Fraction
from typing import Callable, List, Optional, Tuple
import logging
import time

from app.core.detpoly import (
	build_P,
	build_P_r,
	build_P_via_phi,
	build_Q,
	chi_chain_majorized,
	coeff_p,
	phi,
	phi_two_term,
	series_oracle,
)
from app.core.exactmath import X, Polynomial, factorial, normalize_leading, product_of_linear
from app.core.pfgen import check_pf_inf, check_pf_r, gen_pf_inf, grabarek_transform
from app.core.rng import trial_rng
from app.core.rootcheck import (
	coeffs_positive,
	esp_ratio_decreases,
	hurwitz_stable,
	lemma1_sum,
	real_rooted_negative,
)
from app.schemas.campaign import CampaignConfig, CampaignReport, RegressionCheck
from app.schemas.sequence import Sequence
from app.services import sampling
from app.services.campaign import exit_code_for

logger = logging.getLogger(__name__)

REGRESSION_SEED = 20240501

# Check = функция без аргументов; None - успех, строка - описание провала
Check = Callable[[], Optional[str]]


def _config() -> CampaignConfig:
	return CampaignConfig(conjectures=[], trials=0, workers=1)


def _positive_values(rng, n: int, config: CampaignConfig) -> List[Fraction]:
	bound = config.denominator_bound
	return [sampling.uniform_rational(rng, Fraction(1, bound), Fraction(4), bound) for _ in range(n + 1)]


def check_lemma3_ones() -> Optional[str]:
	config = _config()
	for n in range(2, 13):
		for index in range(20):
			rng = trial_rng(REGRESSION_SEED, n * 100 + index, "lemma3")
			alpha, beta = sampling.sample_alpha_beta(rng, config)
			q = build_Q(n, alpha, beta, Sequence.ones(n))
			if not q.is_zero:
				return f"Q_{n}^({alpha},{beta})(ones) = {q.format()}"
	return None


def check_geometric_zero() -> Optional[str]:
	config = _config()
	for index in range(50):
		rng = trial_rng(REGRESSION_SEED, index, "geometric")
		n = rng.randint(2, 10)
		f = sampling.sample_geometric(rng, n, config)
		alpha, beta = sampling.sample_alpha_beta(rng, config)
		q = build_Q(n, alpha, beta, f)
		if not q.is_zero:
			return f"Q_{n}^({alpha},{beta}) on {f.tag} sequence = {q.format()}"
	return None


def check_phi_values() -> Optional[str]:
	expected = [
		("phi(3,1)", phi(3, 1).phi, Polynomial([2, 2])),
		("phi(4,1)", phi(4, 1).phi, Polynomial([6, 6])),
		("phi(4,2)", phi(4, 2).phi, Polynomial([0, 2, 2])),
		("phi_two_term(4,2)", phi_two_term(4, 2), Polynomial([0, 4, 4])),
	]
	for name, actual, value in expected:
		if actual != value:
			return f"{name} = {actual.format()}, expected {value.format()}"
	return None


def check_free_term() -> Optional[str]:
	config = _config()
	for index in range(100):
		rng = trial_rng(REGRESSION_SEED, index, "free_term")
		n = rng.randint(2, 10)
		f = _positive_values(rng, n, config)
		expected = factorial(n) * (f[1] * f[n - 1] - f[0] * f[n])
		if coeff_p(n, 0, f) != expected or build_P(n, f).coefficient(0) != expected:
			return f"p_{n}(0) != {expected} for f={[str(v) for v in f]}"
	return None


def check_routes() -> Optional[str]:
	config = _config()
	for index in range(500):
		rng = trial_rng(REGRESSION_SEED, index, "routes")
		n = rng.randint(2, 10)
		f = _positive_values(rng, n, config)
		p = build_P(n, f)
		if build_P_via_phi(n, f) != p:
			return f"build_P_via_phi differs from build_P at n={n}"
		if Polynomial([coeff_p(n, m, f) for m in range(n - 1)]) != p:
			return f"coeff_p differs from build_P at n={n}"
		if build_P_r(n, 2, f) != p:
			return f"build_P_r(n, 2) differs from build_P at n={n}"
	for r in (2, 3, 4):
		for index in range(5):
			rng = trial_rng(REGRESSION_SEED, r * 100 + index, "series")
			n = rng.randint(2, 8)
			f = _positive_values(rng, n, config)
			if series_oracle(n, r, f) != build_P_r(n, r, f):
				return f"series_oracle differs from build_P_r at n={n}, r={r}"
	return None


def check_theorem1() -> Optional[str]:
	config = _config()
	for index in range(1000):
		rng = trial_rng(REGRESSION_SEED, index, "theorem1")
		n = rng.randint(3, 12)
		f = sampling.sample_log_concave(rng, n, config, strict=True)
		verdict = coeffs_positive(build_P(n, f), expected_degree=n - 2)
		if not verdict.holds:
			return f"P_{n} fails on {[str(v) for v in f.values]}: {verdict.witness.reason.value}"
	return None


def check_analyzers() -> Optional[str]:
	config = _config()
	for index in range(50):
		rng = trial_rng(REGRESSION_SEED, index, "analyzers")
		roots = sampling.sample_roots(rng, rng.randint(1, 6), config)
		stable = product_of_linear(roots)
		c = sampling.log_uniform_positive(rng, config.root_log2_span, config.denominator_bound)
		unstable_real = stable * (X - c)
		# Пара a ± bi с a >= 0
		a = sampling.uniform_rational(rng, Fraction(0), Fraction(2), config.denominator_bound)
		b = sampling.log_uniform_positive(rng, config.root_log2_span, config.denominator_bound)
		unstable_pair = stable * Polynomial([a * a + b * b, -2 * a, 1])

		if not hurwitz_stable(stable).holds or not real_rooted_negative(stable).holds:
			return f"{stable.format()} built from negative roots is rejected"
		for p in (unstable_real, unstable_pair):
			if hurwitz_stable(p).holds or real_rooted_negative(p).holds:
				return f"{p.format()} with a root in the closed right half-plane is accepted"
		for p in (stable, unstable_real, unstable_pair):
			if hurwitz_stable(p).holds and not coeffs_positive(normalize_leading(p)).holds:
				return f"{p.format()} is Hurwitz stable with a non-positive coefficient"
	return None


def check_pf_machinery() -> Optional[str]:
	config = _config()
	triple = Sequence.ones(2)
	if not check_pf_r(triple, 2).ok:
		return "(1,1,1) is not PF_2"
	result = check_pf_r(triple, 3)
	if result.ok or result.witness.value != -1:
		return f"(1,1,1) PF_3 check gave {result.witness}"
	for index in range(20):
		rng = trial_rng(REGRESSION_SEED, index, "pf_inf")
		n = rng.randint(1, 8)
		f = gen_pf_inf(sampling.sample_roots(rng, n, config))
		if not check_pf_inf(f) or not check_pf_r(f, 3).ok:
			return f"PF_inf sequence {[str(v) for v in f.values]} rejected"
		g = grabarek_transform(f, rng.randint(1, 3))
		if not check_pf_inf(g):
			return f"Grabarek transform of {[str(v) for v in f.values]} is not PF_inf"
	return None


def check_lemmas() -> Optional[str]:
	config = _config()
	for index in range(100):
		rng = trial_rng(REGRESSION_SEED, index, "lemma1")
		n = rng.randint(2, 10)
		balanced = index % 4 == 0
		f = sampling.sample_geometric(rng, n, config) if balanced else sampling.sample_log_concave(rng, n, config)
		weights = sampling.sample_lemma1_weights(rng, n, config, balanced=balanced)
		total = lemma1_sum(f, weights)
		if total < 0 or (balanced and total != 0):
			return f"Lemma 1 sum {total} for n={n}"
	for index in range(100):
		rng = trial_rng(REGRESSION_SEED, index, "lemma2")
		size = rng.randint(1, 8)
		B, A = sampling.sample_supermajorized_pair(rng, size, config)
		for k in range(1, size + 1):
			if not esp_ratio_decreases(B, A, k):
				return f"Lemma 2 ratio increases at k={k} for A={A}, B={B}"
	return None


def check_chi_chain() -> Optional[str]:
	for n in range(6, 15):
		for k, holds in chi_chain_majorized(n):
			if not holds:
				return f"chi_{k - 1} is not weakly supermajorized by chi_{k} at n={n}"
	return None


CHECKS: List[Tuple[str, Check]] = [
	("lemma3_ones_vanish", check_lemma3_ones),
	("geometric_vanish", check_geometric_zero),
	("phi_worked_values", check_phi_values),
	("free_term_formula", check_free_term),
	("route_equivalence", check_routes),
	("theorem1_positive", check_theorem1),
	("analyzer_ground_truth", check_analyzers),
	("pf_machinery", check_pf_machinery),
	("lemma_inequalities", check_lemmas),
	("chi_chain_majorized", check_chi_chain),
]


def regression_suite() -> CampaignReport:
	"""Выполняет все проверки CHECKS и собирает отчёт."""
	start = time.perf_counter()
	results = []
	for name, check in CHECKS:
		try:
			detail = check()
		except Exception as e:
			logger.error(f"Regression check {name} raised: {e}", exc_info=True)
			detail = f"{type(e).__name__}: {e}"
		passed = detail is None
		if passed:
			logger.info(f"Regression check {name}: ok")
		else:
			logger.error(f"Regression check {name} failed: {detail}")
		results.append(RegressionCheck(name=name, passed=passed, detail=detail))

	report = CampaignReport(
		config=_config(),
		regression=results,
		wall_time_ms=int((time.perf_counter() - start) * 1000),
	)
	report.exit_code = exit_code_for(report)
	return report
