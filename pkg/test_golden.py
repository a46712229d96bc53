"""
예제 표가 golden/ 의 파일과 바이트 단위로 같은지 확인합니다.
"""
from pathlib import Path

import pytest

import reports
from data_manager import Settings, load_golden
from lattices import errors

GOLDEN_DIR = Path(__file__).resolve().parent / "golden"


@pytest.mark.parametrize("table", ["ex1", "ex2", "table1", "k3", "enriques"])
def test_table_matches_golden(table):
    expected = load_golden(table, str(GOLDEN_DIR))
    assert expected is not None
    assert reports.reproduce(table, Settings()) == expected


def test_reproduce_is_deterministic():
    assert reports.reproduce("table1") == reports.reproduce("table1")


def test_candidates_table_for_other_c1sq():
    text = reports.reproduce("candidates", c1sq=2)
    assert text == reports.reproduce("ex2")
    assert "(s,t)" not in text


def test_reproduce_errors():
    with pytest.raises(errors.ValidationError):
        reports.reproduce("candidates")
    with pytest.raises(errors.ValidationError):
        reports.reproduce("missing")


def test_render_table_layout():
    text = reports.render_table("제목", ["a", "bb"], [[1, "x"], [22, "yyy"]], ["주석"])
    assert text.splitlines() == [
        "제목",
        "--------",
        "a  | bb",
        "--------",
        "1  | x",
        "22 | yyy",
        "--------",
        "* 주석",
    ]
    assert text.endswith("\n")


def test_enriques_table_notes_rank_nine_class_number_one_forms():
    notes = [line for line in reports.reproduce("enriques").splitlines() if line.startswith("* ")]
    assert len(notes) == 3
    assert "G9" in notes[2]
    assert "E8 + <8>" in notes[2]
