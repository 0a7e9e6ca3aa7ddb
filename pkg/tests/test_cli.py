"""CLI contract: suites, determinism, exit codes, diagnostics."""

import json

import pytest

from fncalc.cli import main
from fncalc.suites import SUITE_NAMES, SuiteConfig, run_suite


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_suite_name_catalogue():
    assert set(SUITE_NAMES) == {
        "gla-axioms",
        "fn-action",
        "mc-check",
        "kahler-dc",
        "g2-equivariance",
        "torus-cohomology",
        "symbol-check",
        "linfty-jacobi",
        "vdata",
    }
    with pytest.raises(Exception):
        run_suite(SuiteConfig(suite="nope"))


def test_mc_check_pass_and_exit_zero(capsys):
    code, out, err = run_cli(capsys, "mc-check", "--psi", "star-phi")
    assert code == 0
    payload = json.loads(out)
    assert payload["status"] == "pass"
    assert payload["checks"][0]["witness"] is None
    assert "finished" in err


def test_mc_check_failure_witness_and_exit_one(capsys):
    code, out, _ = run_cli(capsys, "mc-check", "--psi", "affine:2:1*x1 e{1,2}")
    assert code == 1
    payload = json.loads(out)
    assert payload["status"] == "fail"
    witness = json.loads(payload["checks"][0]["witness"])
    assert witness["components"][1] == "4*x1 e{1,2}"


def test_malformed_psi_gives_diagnostic_exit(capsys):
    code, out, err = run_cli(capsys, "mc-check", "--psi", "affine:2:e{2,1}")
    assert code == 2
    assert not out
    assert "increase strictly" in err


def test_unknown_psi_name(capsys):
    code, _, err = run_cli(capsys, "mc-check", "--psi", "mystery-form")
    assert code == 2 and "unknown psi" in err


def test_small_suites_pass(capsys):
    for argv in (
        ["gla-axioms", "--samples", "8"],
        ["fn-action", "--samples", "8"],
        ["kahler-dc", "--samples", "8"],
        ["vdata", "--samples", "8"],
        ["linfty-jacobi", "--samples", "20"],
    ):
        code, out, _ = run_cli(capsys, *argv)
        assert code == 0, argv
        assert json.loads(out)["status"] == "pass"


def test_reports_are_byte_identical(capsys):
    _, out1, _ = run_cli(capsys, "gla-axioms", "--samples", "5", "--seed", "9")
    _, out2, _ = run_cli(capsys, "gla-axioms", "--samples", "5", "--seed", "9")
    assert out1 == out2
    _, out3, _ = run_cli(capsys, "gla-axioms", "--samples", "5", "--seed", "10")
    assert out3 != out1  # config is echoed, so seeds are visible


def test_seed_recorded_in_report(capsys):
    _, out, _ = run_cli(capsys, "vdata", "--samples", "5", "--seed", "42")
    payload = json.loads(out)
    assert payload["config"]["seed"] == 42
    assert payload["config"]["samples"] == 5


def test_table_format(capsys):
    code, out, _ = run_cli(capsys, "mc-check", "--psi", "kahler", "--format", "table")
    assert code == 0
    assert "suite: mc-check" in out and "pass" in out


def test_linfty_plane_classification(capsys):
    code, out, _ = run_cli(capsys, "linfty", "--plane", "1,2,4", "--check", "associative")
    assert code == 0
    payload = json.loads(out)
    assert payload["associative"] is False
    assert "e_7" in payload["checks"][0]["witness"]

    code, out, _ = run_cli(capsys, "linfty", "--plane", "1,4,5", "--check", "associative")
    payload = json.loads(out)
    assert payload["associative"] is True


def test_linfty_default_check_on_curved_plane(capsys):
    code, out, _ = run_cli(capsys, "linfty", "--plane", "1,2,4")
    assert code == 0
    payload = json.loads(out)
    assert payload["associative"] is False
    assert payload["checks"][0]["check"] == "curved-zero-bracket"


def test_bad_plane_spec(capsys):
    code, _, err = run_cli(capsys, "linfty", "--plane", "1,2")
    assert code == 2


def test_torus_suite_small_slice(capsys):
    # jobs=1 keeps the test in-process; a 3-mode slice via max-freq 0 is
    # degenerate, so use the library sweep contract instead for speed
    config = SuiteConfig(suite="torus-cohomology", max_freq=0, jobs=1)
    report = run_suite(config)
    assert report.passed
    payload = json.loads(report.to_json())
    assert payload["totals"]["harmonic_zero_mode"]["3"] == 35
    assert len(payload["modes"]) == 1
