from fractions import Fraction

import pytest

from app.core.exactmath import Polynomial
from app.core.pfgen import gen_pf2
from app.schemas.campaign import CampaignConfig, Conjecture, RelaxMode, TrialOutcome, TrialRecord
from app.schemas.sequence import Sequence
from app.schemas.verdict import StabilityVerdict, VerdictKind, WitnessReason
from app.services import shrink as shrink_module
from app.services.shrink import complexity, shrink
from app.services.trials import (
	OUTSIDE_HYPOTHESIS,
	AnalyzerInconsistency,
	check_cross_implications,
	check_input,
	evaluate_trial,
	is_geometric,
	replay,
)


@pytest.fixture
def config():
	return CampaignConfig(trials=4, n_min=3, n_max=6, r_min=2, r_max=3)


def test_check_input_C1_holds():
	record = check_input(Conjecture.C1, 3, Sequence.of([1, 2, 2, 1]), alpha=Fraction(1), beta=Fraction(2))
	assert record.outcome == TrialOutcome.holds
	assert record.verdict.kind == VerdictKind.all_coeffs_positive
	assert record.observed_degree == 1
	assert len(record.secondary) == 3


def test_check_input_outside_hypothesis():
	record = check_input(Conjecture.C1, 3, Sequence.ones(3), alpha=Fraction(1), beta=Fraction(1))
	assert record.outcome == TrialOutcome.not_applicable
	assert record.note == OUTSIDE_HYPOTHESIS
	assert record.verdict is None


def test_check_input_T1_and_C3():
	assert check_input(Conjecture.T1, 3, Sequence.of([1, 2, 2, 1])).outcome == TrialOutcome.holds
	record = check_input(Conjecture.C3, 3, Sequence.of([1, 3, 3, 1]))
	assert record.outcome == TrialOutcome.holds
	assert record.polynomial == Polynomial([48, 48])


def test_check_input_pf_r_conjectures():
	for conjecture in (Conjecture.C4, Conjecture.C5, Conjecture.C6):
		record = check_input(conjecture, 3, Sequence.of([1, 3, 3, 1]), r=2)
		assert record.outcome == TrialOutcome.holds, conjecture


def test_check_input_pf_r_below_applicable_range():
	record = check_input(Conjecture.C4, 4, Sequence.of([1, 4, 6, 4, 1]), r=3)
	assert record.outcome == TrialOutcome.not_applicable
	assert record.note.startswith("n < r(r-1)")
	assert record.polynomial is not None


def test_check_input_TA_and_lemma1():
	ta = check_input(Conjecture.TA, 3, Sequence.ones(3), alpha=Fraction(2), beta=Fraction(3))
	assert ta.outcome == TrialOutcome.holds
	assert ta.polynomial.is_zero
	assert len(ta.sample_points) > 0

	l1 = check_input(Conjecture.L1, 2, Sequence.ones(2), weights=[Fraction(-1), Fraction(1)])
	assert l1.outcome == TrialOutcome.holds
	assert l1.verdict.kind == VerdictKind.weighted_sum_nonnegative


def test_check_input_missing_parameters():
	with pytest.raises(ValueError):
		check_input(Conjecture.C2, 3, Sequence.of([1, 2, 2, 1]))
	with pytest.raises(ValueError):
		check_input(Conjecture.C4, 3, Sequence.of([1, 2, 2, 1]))
	with pytest.raises(ValueError):
		check_input(Conjecture.L2, 3, Sequence.of([1, 2, 2, 1]))
	with pytest.raises(ValueError):
		check_input(Conjecture.T1, 5, Sequence.of([1, 2, 2, 1]))


def test_relaxed_alpha_beta_builds_Q():
	record = check_input(
		Conjecture.C3, 3, Sequence.of([1, 3, 3, 1]), alpha=Fraction(1), beta=Fraction(1), relax=RelaxMode.alpha_beta
	)
	assert record.relax == RelaxMode.alpha_beta
	assert record.polynomial == Polynomial([96, 48])


def test_is_geometric():
	assert is_geometric(Sequence.geometric(4, Fraction(2, 3)))
	assert not is_geometric(Sequence.of([1, 2, 2, 1]))


def test_cross_implications_checked():
	assert len(check_cross_implications(Polynomial([1, 1]))) == 3
	assert check_cross_implications(Polynomial()) == []


def test_cross_implication_violation_raises(monkeypatch):
	from app.services import trials

	def inconsistent(p):
		return [
			StabilityVerdict.ok(VerdictKind.all_coeffs_positive),
			StabilityVerdict.fail(VerdictKind.hurwitz_stable, WitnessReason.hurwitz_minor_nonpositive, index=1, value=0),
			StabilityVerdict.ok(VerdictKind.real_rooted_negative),
		]

	monkeypatch.setattr(trials, "cross_implications", inconsistent)
	with pytest.raises(AnalyzerInconsistency):
		trials.check_cross_implications(Polynomial([1, 1]))


@pytest.mark.parametrize("conjecture", list(Conjecture))
def test_evaluate_trial_is_deterministic(config, conjecture):
	first = evaluate_trial(conjecture, 1, config)
	second = evaluate_trial(conjecture, 1, config)
	assert first.outcome != TrialOutcome.error, first.note
	assert first.model_dump(exclude={"elapsed_ms"}) == second.model_dump(exclude={"elapsed_ms"})
	assert replay(first).model_dump(exclude={"elapsed_ms"}) == first.model_dump(exclude={"elapsed_ms"})


def test_evaluate_trial_pf_r_range(config):
	for trial_id in range(6):
		record = evaluate_trial(Conjecture.C4, trial_id, config)
		if record.outcome != TrialOutcome.not_applicable:
			assert record.r in (2, 3)
			assert record.n >= record.r * (record.r - 1)


def test_generator_override():
	config = CampaignConfig(trials=4, n_min=3, n_max=6, generators={"C3": "pf2"})
	record = evaluate_trial(Conjecture.C3, 0, config)
	assert record.generator.value == "pf2"


def _failing_record(n: int) -> TrialRecord:
	sequence = gen_pf2(n, 1, [Fraction(1, 2)] * n)
	return TrialRecord(
		trial_id=3,
		seed=99,
		conjecture=Conjecture.C1,
		n=n,
		alpha=Fraction(17, 13),
		beta=Fraction(9, 7),
		sequence=sequence,
		outcome=TrialOutcome.fails,
		verdict=StabilityVerdict.fail(VerdictKind.all_coeffs_positive, WitnessReason.nonpositive_coefficient, index=0, value=-1),
	)


def test_shrink_requires_failure():
	record = check_input(Conjecture.C1, 3, Sequence.of([1, 2, 2, 1]), alpha=Fraction(1), beta=Fraction(2))
	with pytest.raises(ValueError):
		shrink(record)


def test_shrink_reduces_n_and_simplifies(monkeypatch):
	def fails_from_degree_four(record):
		if record.n >= 4:
			return record.model_copy(update={"outcome": TrialOutcome.fails})
		return record.model_copy(update={"outcome": TrialOutcome.holds, "verdict": StabilityVerdict.ok(VerdictKind.all_coeffs_positive)})

	monkeypatch.setattr(shrink_module, "evaluate_record", fails_from_degree_four)
	original = _failing_record(7)
	shrunk = shrink(original)
	assert shrunk.n == 4
	assert shrunk.outcome == TrialOutcome.fails
	assert complexity(shrunk) < complexity(original)
	assert shrunk.alpha == 1
	assert shrunk.beta == 1


def test_shrink_returns_input_when_nothing_smaller_fails(monkeypatch):
	monkeypatch.setattr(
		shrink_module,
		"evaluate_record",
		lambda record: record.model_copy(update={"outcome": TrialOutcome.holds}),
	)
	original = _failing_record(5)
	assert shrink(original) == original
