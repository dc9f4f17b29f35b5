import pytest

from app.exceptions import ParseError
from app.models.experiment import ExperimentReport, ParamVector, Scenario, TrialRecord
from app.models.pencil import StructureTag
from app.utils.serialization import (
    REPORT_COLUMNS,
    format_multiplicities,
    parse_multiplicities,
    pencil_from_json,
    pencil_to_json,
    report_frame,
)
from tests.helpers import E2


@pytest.mark.parametrize("text,expected", [("3,1", (3, 1)), ("(3,1)", (3, 1)), ("4", (4,)), ("()", ()), ("1,3", (3, 1))])
def test_parse_multiplicities(text, expected):
    assert parse_multiplicities(text) == expected


@pytest.mark.parametrize("text", ["a", "3,,1", "0", "-1,2"])
def test_parse_multiplicities_rejects(text):
    with pytest.raises(ParseError):
        parse_multiplicities(text)


def test_format_multiplicities():
    assert format_multiplicities((3, 1)) == "(3,1)"
    assert format_multiplicities(()) == "()"


def test_pencil_json(example_pencil):
    payload = pencil_to_json(example_pencil)
    assert payload == {
        "n": 2,
        "structure": "hermitian",
        "A": [["0", "-1"], ["-1", "0"]],
        "B": [["0", "1"], ["1", "0"]],
    }
    restored = pencil_from_json(payload)
    assert restored == example_pencil
    assert restored.structure == StructureTag.HERMITIAN
    with pytest.raises(ParseError):
        pencil_from_json({"A": [["1"]]})


def test_report_frame_keeps_singular_trials():
    record = TrialRecord(trial=0, regular=False, perturbation_rank=1, params=ParamVector())
    report = ExperimentReport(scenario=Scenario(spec=E2, rank=1, trials=1), s=0, trials=[record])
    frame = report_frame(report)
    assert list(frame.columns) == REPORT_COLUMNS
    assert len(frame) == 1
    assert not frame.loc[0, "regular"]
    assert frame.loc[0, "new_eig_profile"] == ""
