"""
Command-line surface: JSON in, JSON or short text out, exit codes 0/1/2.
"""
import json
import logging

import pandas as pd
import pytest
from pythonjsonlogger import jsonlogger

from app import cli
from app.utils.logging_config import configure_logging
from app.utils.serialization import REPORT_COLUMNS
from tests.helpers import E1_JSON, E3_JSON, T_EVEN_SCENARIO


@pytest.fixture(autouse=True)
def keep_test_logging(monkeypatch):
    monkeypatch.setattr(cli, "configure_logging", lambda *args, **kwargs: None)


@pytest.fixture
def write_json(tmp_path):
    def write(name, payload):
        path = tmp_path / name
        path.write_text(json.dumps(payload))
        return str(path)
    return write


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out.strip(), err


def test_build(capsys, write_json):
    code, out, _ = run(capsys, "build", "--spec", write_json("e3.json", E3_JSON))
    assert code == 0
    payload = json.loads(out)
    assert payload["structure"] == "hermitian"
    assert payload["A"] == [["0", "1"], ["1", "1"]]
    assert payload["B"] == [["0", "-1"], ["-1", "0"]]


def test_decompose(capsys, write_json):
    path = write_json("e1.json", E1_JSON)
    code, out, _ = run(capsys, "decompose", "--spec", path)
    assert code == 0
    payload = json.loads(out)
    assert payload["structure"] == "hermitian"
    assert payload["ell"] + 2 * payload["s"] == 4

    code, out, _ = run(capsys, "decompose", "--spec", path, "--minimal")
    assert code == 0
    assert json.loads(out)["ell"] == 2


def test_signsum(capsys, write_json):
    code, out, _ = run(capsys, "signsum", "--spec", write_json("e1.json", E1_JSON), "--eig", "1")
    assert (code, out) == (0, "2")


def test_multiplicities_from_spec_and_pencil(capsys, write_json, tmp_path):
    spec_path = write_json("e1.json", E1_JSON)
    assert run(capsys, "multiplicities", "--spec", spec_path, "--eig", "1")[:2] == (0, "(3,1)")
    assert run(capsys, "multiplicities", "--spec", spec_path, "--eig", "2")[:2] == (0, "()")

    _, built, _ = run(capsys, "build", "--spec", spec_path)
    pencil_path = tmp_path / "pencil.json"
    pencil_path.write_text(built)
    assert run(capsys, "multiplicities", "--pencil", str(pencil_path), "--eig", "1")[:2] == (0, "(3,1)")


@pytest.mark.parametrize("argv,expected", [
    (["--structure", "t-even", "--class", "zero", "--list", "3,3", "--rank", "1"], "4"),
    (["--structure", "t-odd", "--class", "zero", "--list", "2,2", "--rank", "1"], "3,1"),
    (["--structure", "t-even", "--class", "infinity", "--list", "(3,1)", "--rank", "1"], "1,1"),
    (["--structure", "hermitian", "--list", "1", "--rank", "1"], "()"),
])
def test_predict(capsys, argv, expected):
    assert run(capsys, "predict", *argv)[:2] == (0, expected)


def test_predict_json(capsys):
    code, out, _ = run(capsys, "predict", "--structure", "t-palindromic", "--class", "plus_one",
                       "--list", "3,3", "--rank", "1", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["expected"] == [4]
    assert payload["prediction_row"] == "raise-odd-critical"


def test_perturb(capsys):
    code, out, _ = run(capsys, "perturb", "--structure", "hermitian", "--n", "3", "--rank", "2", "--seed", "5")
    assert code == 0
    payload = json.loads(out)
    assert (payload["rank"], payload["s"]) == (2, 1)
    assert payload["pencil"]["structure"] == "hermitian"
    assert payload["pencil"]["n"] == 3

    again = json.loads(run(capsys, "perturb", "--structure", "hermitian", "--n", "3", "--rank", "2", "--seed", "5")[1])
    assert again == payload


def test_perturb_recipe(capsys):
    code, out, _ = run(capsys, "perturb", "--n", "4", "--recipe", "m_k", "--value", "5", "--offset", "1")
    assert code == 0
    payload = json.loads(out)
    assert payload["pencil"]["structure"] == "t-odd"
    assert payload["pencil"]["A"][1][3] == "5"
    assert payload["pencil"]["B"][3][1] == "1"


def test_experiment_with_csv(capsys, write_json, tmp_path):
    csv_path = tmp_path / "report.csv"
    code, out, _ = run(capsys, "experiment", "--scenario", write_json("scenario.json", T_EVEN_SCENARIO),
                       "--csv", str(csv_path))
    assert code == 0
    payload = json.loads(out)
    assert payload["ok"] is True
    assert payload["match_count"] == 2

    frame = pd.read_csv(csv_path)
    assert list(frame.columns) == REPORT_COLUMNS
    assert len(frame) == 2 * 3
    assert frame["match"].all()


def test_experiment_overrides(capsys, write_json):
    code, out, _ = run(capsys, "experiment", "--scenario", write_json("scenario.json", T_EVEN_SCENARIO),
                       "--trials", "1", "--seed", "8")
    assert code == 0
    payload = json.loads(out)
    assert len(payload["trials"]) == 1
    assert payload["scenario"]["seed"] == 8


def test_verify_appendix(capsys):
    code, out, _ = run(capsys, "verify-appendix", "--kmax", "1", "--gamma", "1/2", "--gamma", "-3")
    assert code == 0
    payload = json.loads(out)
    assert payload["passed"] is True
    assert len(payload["checks"]) == 6


@pytest.mark.parametrize("argv", [
    ["build", "--spec", "/nonexistent/spec.json"],
    ["predict", "--structure", "t-even", "--class", "plus_one", "--list", "1", "--rank", "1"],
    ["predict", "--structure", "hermitian", "--list", "a,b", "--rank", "1"],
    ["verify-appendix", "--kmax", "0"],
    ["perturb", "--structure", "skew-symmetric", "--n", "2", "--rank", "1"],
])
def test_input_errors_exit_with_two(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err.startswith("error:")


def test_malformed_spec_files(capsys, tmp_path, write_json):
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    assert run(capsys, "build", "--spec", str(broken))[0] == 2

    unsigned = {"structure": "hermitian", "blocks": [{"kind": "hermitian-real", "eig": "1", "size": 1}]}
    assert run(capsys, "build", "--spec", write_json("unsigned.json", unsigned))[0] == 2


def test_usage_errors():
    with pytest.raises(SystemExit):
        cli.main([])
    with pytest.raises(SystemExit):
        cli.main(["predict", "--structure", "nonsense", "--list", "1", "--rank", "1"])


def test_configure_logging():
    root = logging.getLogger()
    saved_handlers, saved_level = list(root.handlers), root.level
    try:
        configure_logging("debug", False)
        assert root.level == logging.DEBUG
        assert not isinstance(root.handlers[0].formatter, jsonlogger.JsonFormatter)
        configure_logging("warning", True)
        assert root.level == logging.WARNING
        assert isinstance(root.handlers[0].formatter, jsonlogger.JsonFormatter)
    finally:
        for handler in list(root.handlers):
            root.removeHandler(handler)
        for handler in saved_handlers:
            root.addHandler(handler)
        root.setLevel(saved_level)
