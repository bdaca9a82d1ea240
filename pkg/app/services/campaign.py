"""
Кампании: пул испытаний, агрегация, контрпримеры, отчёты.

Испытание зависит только от (config, conjecture, trial_id), поэтому
последовательный и параллельный запуск дают одинаковые записи; после
сбора они сортируются по (утверждение, trial_id).
"""
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from typing import Dict, List, Tuple
import csv
import io
import logging
import time

from app.schemas.campaign import (
	CampaignConfig,
	CampaignReport,
	Conjecture,
	ConjectureTotals,
	CounterexampleEntry,
	RelaxMode,
	ReportFormat,
	TrialError,
	TrialOutcome,
	TrialRecord,
)
from app.services.shrink import shrink
from app.services.trials import evaluate_trial

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INTERNAL_ERROR = 1
EXIT_COUNTEREXAMPLE = 10

RELAXED_SEARCH_CAVEAT = (
	"Relaxed C3 search: counterexamples to the relaxed hypotheses are known to exist but were "
	"not published; finding none here is not evidence either way."
)

CSV_FIELDS = ("conjecture", "trials", "holds", "fails", "not_applicable", "rejections", "errors")

_ORDER = {conjecture: index for index, conjecture in enumerate(Conjecture)}


def _evaluate_planned(item: Tuple[Conjecture, int], config: CampaignConfig) -> TrialRecord:
	conjecture, trial_id = item
	return evaluate_trial(conjecture, trial_id, config)


def trial_plan(config: CampaignConfig) -> List[Tuple[Conjecture, int]]:
	conjectures = sorted(set(config.conjectures), key=_ORDER.get)
	return [(conjecture, trial_id) for conjecture in conjectures for trial_id in range(config.trials)]


def run_trials(config: CampaignConfig) -> List[TrialRecord]:
	"""
	Все испытания кампании; при workers > 1 - в пуле процессов.

	Returns:
		Записи, отсортированные по (утверждение, trial_id)
	"""
	plan = trial_plan(config)
	worker = partial(_evaluate_planned, config=config)
	if config.workers == 1:
		records = [worker(item) for item in plan]
	else:
		chunksize = max(1, len(plan) // (config.workers * 4))
		with ProcessPoolExecutor(max_workers=config.workers) as pool:
			records = list(pool.map(worker, plan, chunksize=chunksize))
	records.sort(key=lambda record: (_ORDER[record.conjecture], record.trial_id))
	return records


def _shrink_safely(record: TrialRecord) -> TrialRecord:
	try:
		return shrink(record)
	except Exception as e:
		logger.error(f"Shrinking {record.conjecture.value} trial {record.trial_id} failed: {e}", exc_info=True)
		return record


def exit_code_for(report: CampaignReport) -> int:
	"""0 - всё выполнено, 10 - контрпример к C1-C6, 1 - ошибка или провал доказанного утверждения."""
	if report.errors or any(not check.passed for check in report.regression):
		return EXIT_INTERNAL_ERROR
	if any(entry.original.conjecture.is_proved for entry in report.counterexamples):
		return EXIT_INTERNAL_ERROR
	if report.counterexamples:
		return EXIT_COUNTEREXAMPLE
	return EXIT_OK


def aggregate(config: CampaignConfig, records: List[TrialRecord], wall_time_ms: int = 0) -> CampaignReport:
	"""Итоги, контрпримеры (исходный и упрощённый), отказы генераторов и ошибки."""
	counts: Dict[Conjecture, Dict[str, int]] = {}
	rejections: Dict[Conjecture, int] = {}
	counterexamples = []
	errors = []
	for conjecture in sorted(set(config.conjectures), key=_ORDER.get):
		counts[conjecture] = {"trials": 0, "holds": 0, "fails": 0, "not_applicable": 0}
		rejections[conjecture] = 0

	for record in records:
		rejections[record.conjecture] += record.rejections
		if record.outcome == TrialOutcome.error:
			errors.append(TrialError(conjecture=record.conjecture, trial_id=record.trial_id, message=record.note or ""))
			continue
		bucket = counts[record.conjecture]
		bucket["trials"] += 1
		bucket[record.outcome.value] += 1
		if record.outcome == TrialOutcome.fails:
			logger.warning(f"{record.conjecture.value} fails on trial {record.trial_id} (n={record.n})")
			shrunk = _shrink_safely(record) if config.shrink else record
			counterexamples.append(CounterexampleEntry(original=record, shrunk=shrunk))

	caveats = []
	if config.relax != RelaxMode.none and Conjecture.C3 in config.conjectures:
		caveats.append(RELAXED_SEARCH_CAVEAT)

	report = CampaignReport(
		config=config,
		totals={conjecture: ConjectureTotals(**bucket) for conjecture, bucket in counts.items()},
		counterexamples=counterexamples,
		rejections=rejections,
		errors=errors,
		caveats=caveats,
		wall_time_ms=wall_time_ms,
	)
	report.exit_code = exit_code_for(report)
	return report


def run_campaign(config: CampaignConfig) -> CampaignReport:
	start = time.perf_counter()
	logger.info(
		f"Campaign: {len(config.conjectures)} statements x {config.trials} trials, "
		f"n in [{config.n_min}, {config.n_max}], seed {config.seed}, {config.workers} workers"
	)
	records = run_trials(config)
	report = aggregate(config, records, int((time.perf_counter() - start) * 1000))
	for conjecture, totals in report.totals.items():
		logger.info(
			f"{conjecture.value}: {totals.holds} hold, {totals.fails} fail, "
			f"{totals.not_applicable} not applicable of {totals.trials}"
		)
	if report.errors:
		logger.error(f"Campaign finished with {len(report.errors)} internal errors")
	return report


def report_csv(report: CampaignReport) -> str:
	"""Одна строка на утверждение."""
	errors: Dict[Conjecture, int] = {}
	for error in report.errors:
		errors[error.conjecture] = errors.get(error.conjecture, 0) + 1
	buffer = io.StringIO()
	writer = csv.writer(buffer, lineterminator="\n")
	writer.writerow(CSV_FIELDS)
	for conjecture, totals in report.totals.items():
		writer.writerow([
			conjecture.value,
			totals.trials,
			totals.holds,
			totals.fails,
			totals.not_applicable,
			report.rejections.get(conjecture, 0),
			errors.get(conjecture, 0),
		])
	return buffer.getvalue()


def render_report(report: CampaignReport, fmt: ReportFormat = ReportFormat.json) -> str:
	if fmt == ReportFormat.csv:
		return report_csv(report)
	return report.model_dump_json(indent=2)
