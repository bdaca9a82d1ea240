import json

from app import cli
from app.cli import main
from app.schemas.campaign import Conjecture, TrialOutcome, TrialRecord
from app.schemas.verdict import StabilityVerdict, VerdictKind, WitnessReason


def test_expand_P(capsys):
	assert main(["expand", "--mode", "P", "--f", "1,2,2,1"]) == 0
	out = capsys.readouterr().out.strip()
	assert out == "18 + 18x; degree 1; coeffs_positive: yes; hurwitz_stable: yes; real_rooted_negative: yes"


def test_expand_Q_on_ones(capsys):
	assert main(["expand", "--mode", "Q", "--n", "4", "--alpha", "2", "--beta", "3", "--f", "1,1,1,1,1"]) == 0
	assert capsys.readouterr().out.strip() == "0 (zero polynomial)"


def test_expand_invalid_input():
	assert main(["expand", "--mode", "Q", "--f", "1,1,1"]) == 1
	assert main(["expand", "--mode", "P", "--n", "5", "--f", "1,1,1"]) == 1
	assert main(["expand", "--mode", "P", "--f", "1,0.5"]) == 1


def test_unknown_flags():
	assert main(["expand"]) == 1
	assert main(["campaign", "--conjecture", "C9"]) == 1
	assert main(["frobnicate"]) == 1


def test_gen_json(capsys):
	assert main(["gen", "--generator", "pf2", "--n", "4", "--seed", "3", "--count", "2"]) == 0
	sequences = json.loads(capsys.readouterr().out)
	assert len(sequences) == 2
	assert all(len(s["values"]) == 5 for s in sequences)


def test_gen_csv(capsys):
	assert main(["gen", "--generator", "geometric", "--n", "3", "--q", "1/2", "--format", "csv"]) == 0
	assert capsys.readouterr().out.strip() == "1,1/2,1/4,1/8"


def test_check_holds(capsys, tmp_path):
	out = tmp_path / "check.json"
	assert main(["check", "--conjecture", "C4", "--r", "2", "--f", "1,3,3,1", "--out", str(out)]) == 0
	assert "C4 n=3 r=2 holds" in capsys.readouterr().out
	assert json.loads(out.read_text())["outcome"] == "holds"


def test_check_outside_hypothesis(capsys):
	assert main(["check", "--conjecture", "T1", "--f", "1,1,1,1"]) == 0
	assert "not_applicable" in capsys.readouterr().out


def test_check_failure_exit_codes(monkeypatch):
	def failing(conjecture, n, sequence, **kwargs):
		return TrialRecord(
			trial_id=0,
			seed=0,
			conjecture=conjecture,
			n=n,
			sequence=sequence,
			outcome=TrialOutcome.fails,
			verdict=StabilityVerdict.fail(VerdictKind.hurwitz_stable, WitnessReason.hurwitz_minor_nonpositive, index=2, value=0),
		)

	monkeypatch.setattr(cli, "check_input", failing)
	assert main(["check", "--conjecture", "C5", "--r", "2", "--f", "1,3,3,1"]) == 10
	assert main(["check", "--conjecture", "T1", "--f", "1,3,3,1"]) == 1


def test_campaign_writes_report(tmp_path):
	out = tmp_path / "reports" / "t1.json"
	code = main([
		"campaign", "--conjecture", "T1,L2", "--trials", "2", "--n-max", "5",
		"--workers", "1", "--seed", "11", "--out", str(out),
	])
	assert code == 0
	report = json.loads(out.read_text())
	assert set(report["totals"]) == {"T1", "L2"}
	assert report["config"]["seed"] == 11
	assert report["exit_code"] == 0


def test_campaign_config_precedence(tmp_path):
	config_file = tmp_path / "campaign.json"
	config_file.write_text(json.dumps({"trials": 1, "seed": 5, "conjectures": ["C4", "C5"], "n_max": 8}))
	args = cli.build_parser().parse_args([
		"campaign", "--config", str(config_file), "--trials", "3", "--r", "3",
		"--generator", "pf_r_sector", "--generator", "C5=pf_r_cosbound", "--no-shrink",
	])
	config = cli.campaign_config(args)
	assert config.trials == 3
	assert config.seed == 5
	assert config.n_max == 8
	assert config.r_min == config.r_max == 3
	assert config.conjectures == [Conjecture.C4, Conjecture.C5]
	assert config.generators[Conjecture.C4].value == "pf_r_sector"
	assert config.generators[Conjecture.C5].value == "pf_r_cosbound"
	assert config.shrink is False



def test_campaign_range_flags_match_config_keys():
	args = cli.build_parser().parse_args([
		"campaign", "--conjecture", "C4", "--n-min", "6", "--n-max", "9", "--r-min", "2", "--r-max", "3",
	])
	config = cli.campaign_config(args)
	assert (config.n_min, config.n_max, config.r_min, config.r_max) == (6, 9, 2, 3)
	legacy = cli.campaign_config(cli.build_parser().parse_args(["campaign", "--n", "4", "--n-max", "7"]))
	assert legacy.n_min == 4
