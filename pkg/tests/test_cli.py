import json
import subprocess
import sys

import pytest

from conftest import FIXTURES
from lexshell.cli import main, run_command

FIG1 = str(FIXTURES / "fig1.json")
EXAC = str(FIXTURES / "exac.json")
BAD = str(FIXTURES / "nongraded_counterexample.json")
REFERENCE = str(FIXTURES / "fig1_reference_basis.json")


@pytest.mark.parametrize(
    "argv, code",
    [
        (["validate", FIG1], 0),
        (["chains", FIG1], 0),
        (["complex", FIG1], 0),
        (["nerve", FIG1], 0),
        (["shelling", FIG1], 0),
        (["shelling", "--search", FIG1], 0),
        (["prefix", FIG1], 0),
        (["lex", FIG1], 0),
        (["sbs", FIG1], 0),
        (["order", FIG1], 0),
        (["order", "--explain", "a-d-g", "a-b-e-g", FIG1], 0),
        (["gb", FIG1], 0),
        (["gb", "--verify-paper-basis", REFERENCE, FIG1], 0),
        (["oracle", FIG1], 0),
        (["quadratic", FIG1], 0),
        (["verify", FIG1], 0),
        (["augment", FIG1], 0),
        (["validate", EXAC], 0),
        (["nerve", EXAC], 0),
        (["sbs", EXAC], 0),
        (["gb", EXAC], 0),
        (["quadratic", EXAC], 0),
        (["complex", EXAC], 2),
        (["augment", EXAC], 0),
        (["sbs", BAD], 1),
        (["lex", BAD], 1),
        (["quadratic", BAD], 0),
        (["verify", "--direction", "fwd", BAD], 0),
        (["verify", "--direction", "bwd", BAD], 1),
        (["gb", "nonexistent.json"], 2),
        (["bogus"], 2),
        (["order", "--explain", "a-z", "a-b", FIG1], 2),
    ],
)
def test_exit_codes(argv, code):
    assert run_command(argv)[0] == code


def test_gb_report(capsys):
    assert main(["gb", FIG1]) == 0
    report = json.loads(capsys.readouterr().out)
    assert set(report["basis"]["initial_terms"]) == {"a-b-f", "b-e-g", "a-d-g"}
    assert report["basis"]["quadratic"] is True
    assert report["digest"] and report["command"] == ["gb", FIG1]


def test_verify_reference_basis_report():
    _, report = run_command(["gb", "--verify-paper-basis", REFERENCE, FIG1])
    assert report["verified"]["is_groebner_basis"] is True
    assert report["verified"]["without_each"] == [False, False, False]


def test_order_explain_names_the_rule():
    _, report = run_command(["order", "--explain", "b-e-g", "b-f-g", FIG1])
    assert report["sign"] == 1 and report["rule_name"] == "label sequence"


def test_unlabelled_instance_needs_labels(tmp_path):
    f = tmp_path / "plain.json"
    f.write_text(json.dumps({"kind": "poset", "elements": ["a", "b"], "covers": [["a", "b"]]}))
    code, report = run_command(["sbs", str(f)])
    assert code == 2 and "labelled" in report["message"]
    assert run_command(["validate", str(f)])[0] == 0


def test_augment_writes_file(tmp_path):
    f = tmp_path / "anti.json"
    f.write_text(json.dumps({"kind": "poset", "elements": ["x", "y"], "covers": []}))
    out = tmp_path / "out.json"
    code, report = run_command(["augment", str(f), "-o", str(out)])
    assert code == 0 and report["changed"]
    assert len(json.loads(out.read_text())["elements"]) == 4


def test_deterministic_reports():
    a = run_command(["gb", FIG1])[1]
    b = run_command(["gb", FIG1])[1]
    assert a == b
    timed = run_command(["--timing", "gb", FIG1])[1]
    assert "seconds" in timed


def test_sweep_command():
    code, report = run_command(["sweep", "--max-elements", "4", "--count", "3", "--seed", "1", "--deterministic"])
    assert code == 0 and report["verdict"] is True
    code, report = run_command(["sweep", "--max-elements", "5", "--verbose"])
    assert code == 1 and report["records"]


def test_console_script_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "lexshell", "sbs", FIG1], capture_output=True, text=True, check=False
    )
    assert out.returncode == 0
    assert json.loads(out.stdout)["verdict"] is True
