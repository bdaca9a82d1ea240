"""
Командная строка: gen, expand, check, campaign, regress.

Коды выхода: 0 - всё выполнено, 10 - найден контрпример к C1-C6,
1 - внутренняя ошибка, провал регрессии или доказанного утверждения,
неверный ввод.
"""
from pathlib import Path
from typing import Any, Dict, List, Optional
import argparse
import json
import logging
import sys

from pydantic import ValidationError

from app.core.config import settings
from app.core.exactmath import parse_rational, parse_rational_list
from app.schemas.campaign import CampaignConfig, Conjecture, RelaxMode, ReportFormat, TrialOutcome
from app.schemas.generator import GeneratorKind, GeneratorSpec
from app.schemas.polynomial import ExpandMode
from app.schemas.sequence import Sequence
from app.services.campaign import EXIT_COUNTEREXAMPLE, EXIT_INTERNAL_ERROR, EXIT_OK, render_report, run_campaign
from app.services.expand import expand_polynomial, render_expansion, render_trial
from app.services.regression import regression_suite
from app.services.sampling import GeneratorExhausted, generate_from_spec
from app.services.trials import AnalyzerInconsistency, check_input

logger = logging.getLogger(__name__)


def _add_output_flags(parser: argparse.ArgumentParser) -> None:
	parser.add_argument("--out", help="Файл для вывода (по умолчанию stdout)")
	parser.add_argument("--format", choices=[f.value for f in ReportFormat], default=ReportFormat.json.value)


def _add_input_flags(parser: argparse.ArgumentParser) -> None:
	parser.add_argument("--n", type=int, help="Степень n (по умолчанию len(f) - 1)")
	parser.add_argument("--r", type=int)
	parser.add_argument("--alpha", type=parse_rational)
	parser.add_argument("--beta", type=parse_rational)
	parser.add_argument("--f", type=parse_rational_list, required=True, help="Значения f_0..f_n через запятую: 1,2,3/2")


def build_parser() -> argparse.ArgumentParser:
	parser = argparse.ArgumentParser(prog="pfdet", description="PF determinant polynomials: exact expansion and conjecture campaigns")
	subparsers = parser.add_subparsers(dest="command", required=True)

	gen = subparsers.add_parser("gen", help="Сгенерировать последовательности")
	gen.add_argument("--generator", choices=[k.value for k in GeneratorKind], required=True)
	gen.add_argument("--n", type=int, required=True)
	gen.add_argument("--r", type=int)
	gen.add_argument("--seed", type=int, default=0)
	gen.add_argument("--count", type=int, default=1)
	gen.add_argument("--q", type=parse_rational, help="Знаменатель прогрессии для geometric")
	gen.add_argument("--c", type=parse_rational, help="Параметр c для reciprocal_pochhammer")
	_add_output_flags(gen)

	expand = subparsers.add_parser("expand", help="Построить многочлен и вывести вердикты")
	expand.add_argument("--mode", choices=[m.value for m in ExpandMode], required=True)
	_add_input_flags(expand)

	check = subparsers.add_parser("check", help="Проверить одно утверждение на одном входе")
	check.add_argument("--conjecture", choices=[c.value for c in Conjecture], required=True)
	check.add_argument("--relax", choices=[m.value for m in RelaxMode], default=RelaxMode.none.value)
	_add_input_flags(check)
	_add_output_flags(check)

	campaign = subparsers.add_parser("campaign", help="Случайная кампания")
	campaign.add_argument("--config", help="JSON-файл с ключами CampaignConfig")
	campaign.add_argument("--conjecture", action="append", help="Утверждение; можно повторять или перечислить через запятую")
	campaign.add_argument("--n-min", "--n", type=int, dest="n_min", help="Нижняя граница n")
	campaign.add_argument("--n-max", type=int, dest="n_max")
	campaign.add_argument("--r-min", type=int, dest="r_min")
	campaign.add_argument("--r-max", type=int, dest="r_max")
	campaign.add_argument("--r", type=int, help="Фиксированное r для C4-C6, перекрывает --r-min/--r-max")
	campaign.add_argument("--trials", type=int)
	campaign.add_argument("--seed", type=int)
	campaign.add_argument("--workers", type=int)
	campaign.add_argument("--generator", action="append", help="Генератор: KIND для всех или CONJ=KIND")
	campaign.add_argument("--relax", choices=[m.value for m in RelaxMode])
	campaign.add_argument("--no-shrink", action="store_true")
	_add_output_flags(campaign)

	regress = subparsers.add_parser("regress", help="Фиксированный набор тождеств")
	_add_output_flags(regress)
	return parser


def _emit(text: str, out: Optional[str]) -> None:
	if out:
		path = Path(out)
		path.parent.mkdir(parents=True, exist_ok=True)
		path.write_text(text if text.endswith("\n") else text + "\n", encoding="utf-8")
		logger.info(f"Output written to {path}")
	else:
		print(text)


def _degree(args: argparse.Namespace) -> int:
	return args.n if args.n is not None else len(args.f) - 1


def _conjectures(values: List[str]) -> List[Conjecture]:
	result = []
	for value in values:
		for item in value.split(","):
			if item.strip():
				result.append(Conjecture(item.strip()))
	return result


def _generators(values: List[str], conjectures: List[Conjecture]) -> Dict[str, str]:
	result = {}
	for value in values:
		if "=" in value:
			conjecture, kind = value.split("=", 1)
			result[Conjecture(conjecture.strip()).value] = GeneratorKind(kind.strip()).value
		else:
			for conjecture in conjectures:
				result[conjecture.value] = GeneratorKind(value.strip()).value
	return result


def campaign_config(args: argparse.Namespace) -> CampaignConfig:
	"""
	Флаги > файл --config > значения settings.

	Raises:
		ValueError: Неверный файл или значения
	"""
	merged: Dict[str, Any] = {}
	if args.config:
		merged.update(json.loads(Path(args.config).read_text(encoding="utf-8")))
	if args.conjecture:
		merged["conjectures"] = [c.value for c in _conjectures(args.conjecture)]
	for name in ("n_min", "n_max", "r_min", "r_max", "trials", "seed", "workers", "relax"):
		value = getattr(args, name)
		if value is not None:
			merged[name] = value
	if args.r is not None:
		merged["r_min"] = merged["r_max"] = args.r
	if args.generator:
		selected = [Conjecture(c) for c in merged.get("conjectures", [c.value for c in Conjecture])]
		generators = dict(merged.get("generators", {}))
		generators.update(_generators(args.generator, selected))
		merged["generators"] = generators
	if args.no_shrink:
		merged["shrink"] = False
	return CampaignConfig(**merged)


def cmd_gen(args: argparse.Namespace) -> int:
	spec = GeneratorSpec(kind=GeneratorKind(args.generator), n=args.n, r=args.r, seed=args.seed, q=args.q, c=args.c)
	sequences = generate_from_spec(spec, args.count)
	if args.format == ReportFormat.csv.value:
		text = "\n".join(",".join(s.model_dump(mode="json")["values"]) for s in sequences)
	else:
		text = json.dumps([s.model_dump(mode="json") for s in sequences], indent=2)
	_emit(text, args.out)
	return EXIT_OK


def cmd_expand(args: argparse.Namespace) -> int:
	polynomial = expand_polynomial(ExpandMode(args.mode), _degree(args), args.f, args.r, args.alpha, args.beta)
	print(render_expansion(polynomial))
	return EXIT_OK


def cmd_check(args: argparse.Namespace) -> int:
	conjecture = Conjecture(args.conjecture)
	record = check_input(
		conjecture,
		_degree(args),
		Sequence.of(args.f),
		r=args.r,
		alpha=args.alpha,
		beta=args.beta,
		relax=RelaxMode(args.relax),
	)
	if args.out:
		_emit(record.model_dump_json(indent=2), args.out)
	print(render_trial(record))
	if record.outcome == TrialOutcome.fails:
		return EXIT_INTERNAL_ERROR if conjecture.is_proved else EXIT_COUNTEREXAMPLE
	return EXIT_OK


def cmd_campaign(args: argparse.Namespace) -> int:
	report = run_campaign(campaign_config(args))
	_emit(render_report(report, ReportFormat(args.format)), args.out)
	return report.exit_code


def cmd_regress(args: argparse.Namespace) -> int:
	report = regression_suite()
	_emit(render_report(report, ReportFormat(args.format)), args.out)
	failed = [check.name for check in report.regression if not check.passed]
	if failed:
		logger.error(f"Regression checks failed: {', '.join(failed)}")
	return report.exit_code


COMMANDS = {
	"gen": cmd_gen,
	"expand": cmd_expand,
	"check": cmd_check,
	"campaign": cmd_campaign,
	"regress": cmd_regress,
}


def main(argv: Optional[List[str]] = None) -> int:
	logging.basicConfig(
		level=settings.LOG_LEVEL,
		format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
	)
	parser = build_parser()
	try:
		args = parser.parse_args(argv)
	except SystemExit as e:
		# argparse: 0 для --help, иначе неверные флаги
		return EXIT_INTERNAL_ERROR if e.code else EXIT_OK
	try:
		return COMMANDS[args.command](args)
	except (ValidationError, GeneratorExhausted) as e:
		logger.error(f"Invalid input: {e}")
		return EXIT_INTERNAL_ERROR
	except AnalyzerInconsistency as e:
		logger.error(f"Analyzer inconsistency: {e}", exc_info=True)
		return EXIT_INTERNAL_ERROR
	except (ValueError, OSError) as e:
		logger.error(f"{args.command} failed: {e}")
		return EXIT_INTERNAL_ERROR


if __name__ == "__main__":
	sys.exit(main())
