import json

import pytest

from titsmeasure import cli
from titsmeasure.verify import VerificationRun

MEASURE_DOC = {
    "group": {"kind": "abstract", "orders": [4]},
    "variety": {"family": "severi-brauer", "alg": {"degree": 4, "class": {"coords": [1]}}},
}

PAIR_DOC = {
    "group": {"kind": "rational"},
    "x": {"family": "quadric", "form": ["1", "1", "1", "-1", "-1", "-1"]},
    "y": {"family": "quadric", "form": ["2", "1", "1", "-1", "-1", "-2"]},
}


def run(capsys, *argv):
    try:
        code = cli.main(list(argv))
    except SystemExit as exc:  # argparse usage errors
        code = exc.code if isinstance(exc.code, int) else 1
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestSigma:
    def test_flag_form(self, capsys):
        code, out, _ = run(capsys, "sigma", "--kind", "1even", "--m", "5", "--n", "6", "--l", "2")
        assert code == 0 and out == "768\n"

    def test_positional_form(self, capsys):
        code, out, _ = run(capsys, "sigma", "1even", "5", "6", "2")
        assert code == 0 and out == "768\n"

    def test_json_format(self, capsys):
        code, out, _ = run(capsys, "sigma", "2even", "5", "6", "2", "--format", "json")
        assert code == 0
        assert json.loads(out) == {"kind": "2even", "m": 5, "n": 6, "l": 2, "value": 576}

    def test_mixed_forms_rejected(self, capsys):
        code, _, err = run(capsys, "sigma", "1even", "5", "6", "2", "--m", "5")
        assert code == 1 and "not both" in err

    def test_incomplete_flags_rejected(self, capsys):
        code, _, err = run(capsys, "sigma", "--kind", "1even", "--m", "5")
        assert code == 1 and "--n" in err

    def test_non_integer_positional(self, capsys):
        code, _, err = run(capsys, "sigma", "1even", "5", "six", "2")
        assert code == 1

    def test_domain_error_is_exit_one(self, capsys):
        code, _, err = run(capsys, "sigma", "1even", "0", "6", "2")
        assert code == 1


class TestMeasure:
    def test_inline_json(self, capsys):
        code, out, _ = run(capsys, "measure", json.dumps(MEASURE_DOC), "--format", "json")
        assert code == 0
        payload = json.loads(out)
        assert payload["measure"]["rho"] == 4
        assert payload["measure"]["dim"] == 3

    def test_file_input(self, capsys, tmp_path):
        doc = tmp_path / "doc.json"
        doc.write_text(json.dumps(MEASURE_DOC))
        code, out, _ = run(capsys, "measure", str(doc))
        assert code == 0
        assert '"rho": 4' in out  # table format embeds the payload as JSON

    def test_round_trip_variety(self, capsys):
        code, out, _ = run(capsys, "measure", json.dumps(MEASURE_DOC), "--format", "json")
        payload = json.loads(out)
        doc2 = {"group": payload["group"], "variety": payload["variety"]}
        code2, out2, _ = run(capsys, "measure", json.dumps(doc2), "--format", "json")
        assert code2 == 0 and json.loads(out2) == payload

    def test_missing_field(self, capsys):
        code, _, err = run(capsys, "measure", "{}")
        assert code == 1 and "group" in err

    def test_bad_json(self, capsys):
        code, _, err = run(capsys, "measure", "{not json")
        assert code == 1

    def test_missing_file(self, capsys):
        code, _, err = run(capsys, "measure", "no-such-file.json")
        assert code == 1


class TestCompareAndDeduce:
    def test_compare(self, capsys):
        code, out, _ = run(capsys, "compare", json.dumps(PAIR_DOC), "--format", "json")
        assert code == 0
        assert json.loads(out)["verdict"]["measures_equal"] is True

    def test_deduce_default_assumes(self, capsys):
        code, out, _ = run(capsys, "deduce", json.dumps(PAIR_DOC), "--format", "json")
        assert code == 0
        report = json.loads(out)["report"]
        assert report["assumed"] is True
        assert any(
            c["statement"] == "quadrics are isomorphic" for c in report["conclusions"]
        )

    def test_deduce_no_assume(self, capsys):
        code, out, _ = run(
            capsys, "deduce", json.dumps(PAIR_DOC), "--no-assume-equal", "--format", "json"
        )
        report = json.loads(out)["report"]
        assert code == 0 and report["conclusions"] == []

    def test_deduce_i3_flag_round_trips_from_document(self, capsys):
        doc = dict(PAIR_DOC, i3_zero=True)
        code, out, _ = run(capsys, "deduce", json.dumps(doc), "--format", "json")
        assert code == 0


class TestVerifyCommand:
    def test_pass_is_exit_zero(self, capsys):
        code, out, _ = run(
            capsys, "verify", "--suite", "tensor-cancellation", "--group", "2,2", "--n", "6"
        )
        assert code == 0 and "outcome: pass" in out

    def test_resource_limit_is_exit_three(self, capsys):
        code, _, err = run(
            capsys, "verify", "--suite", "relation-equivalence", "--group", "210"
        )
        assert code == 3 and "resource limit" in err

    def test_counterexample_is_exit_two(self, capsys, monkeypatch):
        fake = VerificationRun(
            suite="normal-form-confluence",
            params={},
            outcome="counterexample",
            witness={"raw": []},
        )
        monkeypatch.setattr(cli, "verify_normal_form_confluence", lambda *a, **k: fake)
        code, out, _ = run(
            capsys, "verify", "--suite", "normal-form-confluence", "--group", "6"
        )
        assert code == 2 and "counterexample" in out

    def test_unknown_suite_is_exit_one(self, capsys):
        code, _, _ = run(capsys, "verify", "--suite", "bogus", "--group", "6")
        assert code == 1

    def test_group_required_when_suite_needs_it(self, capsys):
        code, _, err = run(capsys, "verify", "--suite", "normal-form-confluence")
        assert code == 1 and "--group" in err

    def test_bad_group_spec(self, capsys):
        code, _, err = run(
            capsys, "verify", "--suite", "normal-form-confluence", "--group", "2,x"
        )
        assert code == 1

    def test_config_supplies_defaults_flags_override(self, capsys, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"trials": 25, "seed": 3, "group": "6"}))
        code, out, _ = run(
            capsys,
            "verify", "--suite", "normal-form-confluence",
            "--config", str(cfg), "--trials", "10", "--format", "json",
        )
        assert code == 0
        params = json.loads(out)["params"]
        assert params["trials"] == 10 and params["seed"] == 3

    def test_reruns_are_byte_identical(self, capsys):
        args = ("verify", "--suite", "sum-cancellation", "--group", "2,2", "--format", "json")
        _, out1, _ = run(capsys, *args)
        _, out2, _ = run(capsys, *args)
        assert out1 == out2


class TestOtherCommands:
    def test_conic_family(self, capsys):
        code, out, _ = run(capsys, "conic-family", "--primes", "3,7,11", "--format", "json")
        assert code == 0
        payload = json.loads(out)
        assert payload["pairwise_distinct"] is True
        assert [e["ramified_places"] for e in payload["family"]] == [
            ["2", "3"], ["2", "7"], ["2", "11"],
        ]

    def test_conic_family_rejects_bad_prime(self, capsys):
        code, _, err = run(capsys, "conic-family", "--primes", "5")
        assert code == 1

    def test_sigma_check_clean_grid(self, capsys):
        code, out, _ = run(
            capsys,
            "sigma-check", "--n-min", "5", "--n-max", "7",
            "--m-min", "2", "--m-max", "4", "--format", "json",
        )
        assert code == 0 and json.loads(out)["ok"] is True

    def test_sigma_check_violation_is_exit_two(self, capsys, monkeypatch):
        monkeypatch.setattr(
            cli, "recurrence_violations", lambda *a, **k: [{"kind": "2even"}]
        )
        code, out, _ = run(capsys, "sigma-check", "--format", "json")
        assert code == 2 and json.loads(out)["ok"] is False

    def test_unknown_subcommand_is_exit_one(self, capsys):
        code, _, _ = run(capsys, "bogus")
        assert code == 1
