"""Command-line client: argument handling, exit codes, rendering."""

import json

import pytest

from fracsusy.cli import main, render_text
from fracsusy.scalar import get_config, parse_scalar

cfg3 = get_config(3)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_solve_inline_json(capsys):
    code, out, err = run(capsys, "solve", "--inline",
                         "sl2 spinor_plus_scalar n=3", "--pin", "b1_223=1",
                         "--format", "json")
    assert code == 0
    body = json.loads(out)
    assert body["schema"] == "report_v1"
    assert body["dimension"] == 1
    got = {lab: parse_scalar(cfg3, v)
           for lab, v in body["normalized"].items()}
    assert got == {"b1_223": parse_scalar(cfg3, "1"),
                   "b2_113": parse_scalar(cfg3, "-1"),
                   "b3_123": parse_scalar(cfg3, "1/2")}
    assert "{Q2,Q2,Q3} = X1" in body["bracket_lines"]


def test_solve_from_file(tmp_path, capsys):
    path = tmp_path / "case.spec"
    path.write_text("[algebra]\nbuiltin = sl2\n"
                    "[representation]\nbuiltin = spinor\n"
                    "[grading]\nn = 3\n")
    code, out, err = run(capsys, "solve", str(path))
    assert code == 0
    assert "solution dimension: 0" in out
    assert "overall: PASS" in out


def test_solve_needs_exactly_one_source(capsys):
    code, _, err = run(capsys, "solve")
    assert code == 2
    assert "exactly one" in err
    code, _, err = run(capsys, "solve", "path.spec", "--inline", "sl2 spinor")
    assert code == 2


def test_solve_missing_file(capsys):
    code, _, err = run(capsys, "solve", "/nonexistent/case.spec")
    assert code == 2
    assert "cannot read spec file" in err


def test_solve_bad_spec_is_usage_error(capsys):
    code, _, err = run(capsys, "solve", "--inline", "sl2 mystery n=3")
    assert code == 2
    assert "error" in err


def test_identities_env_seed(monkeypatch, capsys):
    monkeypatch.setenv("FRACSUSY_SEED", "20240812")
    code, out, _ = run(capsys, "verify-identities", "--samples", "5",
                       "--format", "json")
    assert code == 0
    body = json.loads(out)
    assert body["seed"] == 20240812
    assert body["pass"] is True


def test_seed_flag_overrides_env(monkeypatch, capsys):
    monkeypatch.setenv("FRACSUSY_SEED", "11")
    code, out, _ = run(capsys, "verify-identities", "--samples", "5",
                       "--seed", "7", "--format", "json")
    assert code == 0
    assert json.loads(out)["seed"] == 7


def test_bad_env_seed(monkeypatch, capsys):
    monkeypatch.setenv("FRACSUSY_SEED", "pi")
    code, _, err = run(capsys, "verify-identities", "--samples", "5")
    assert code == 2
    assert "FRACSUSY_SEED" in err


def test_verify_hopf_text(capsys):
    code, out, _ = run(capsys, "verify-hopf", "--n", "2")
    assert code == 0
    assert "overall: PASS" in out
    assert "invariant_form_primitive" in out


def test_verify_dual_depth_flag(capsys):
    code, out, _ = run(capsys, "verify-dual", "--dual", "translation",
                       "--depth", "2", "--format", "json")
    assert code == 0
    body = json.loads(out)
    assert body["pairing"]["u_max_len"] == 2
    assert body["pairing"]["dual_max_len"] == 2


def test_verification_failure_exits_one(capsys):
    # the translation coproduct is only coassociative at n = 2, so asking
    # for it at n = 3 is a well-posed request whose checks genuinely fail
    code, out, _ = run(capsys, "verify-dual", "--dual", "translation",
                       "--n", "3", "--depth", "2")
    assert code == 1
    assert "FAIL coassociativity" in out
    assert "overall: FAIL" in out


def test_verify_realization_text(capsys):
    code, out, _ = run(capsys, "verify-realization")
    assert code == 0
    assert "PASS symmetric_bracket_table (window=5)" in out
    assert "realized b3_123 = 1/2" in out


def test_render_all_summary():
    report = {
        "schema": "report_v1", "kind": "all", "pass": False,
        "sections": {
            "identities": {"3": {"kind": "identities", "pass": True}},
            "hopf": {"3": {"kind": "hopf", "pass": True}},
            "dual": {"translation": {"kind": "dual", "pass": False}},
            "realization": {"kind": "realization", "pass": True},
            "solve": {"vector_full": {"kind": "solve", "pass": True,
                                      "dimension": 1}},
        },
    }
    text = render_text(report)
    assert "FAIL dual translation" in text
    assert "PASS solve vector_full (dimension 1)" in text
    assert text.endswith("overall: FAIL")
