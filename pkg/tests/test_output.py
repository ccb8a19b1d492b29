"""Tests for JSON, CSV and markdown rendering"""

import json
from fractions import Fraction

from simplest_cubic.config import OutputFormat
from simplest_cubic.output import emit, render, render_csv, render_json, render_jsonl, render_markdown

ROWS = [
    {"p": 7, "a_mod_p2": 5, "k": 2, "l": 6},
    {"p": 7, "a_mod_p2": 41, "k": 4, "l": 3},
]


def test_rationals_are_strings():
    data = json.loads(render_json({"x": Fraction(28, 3), "y": [Fraction(2), 1]}))
    assert data == {"x": "28/3", "y": ["2/1", 1]}


def test_json_is_sorted_and_stable():
    assert render_json({"b": 1, "a": 2}) == render_json({"a": 2, "b": 1})


def test_csv():
    text = render_csv(ROWS)
    assert text.splitlines() == ["p,a_mod_p2,k,l", "7,5,2,6", "7,41,4,3"]


def test_csv_nested_cells():
    text = render_csv([{"a": 21, "coords": [1, 2, 3]}])
    assert '"[1,2,3]"' in text


def test_markdown():
    lines = render_markdown(ROWS, ["p", "k"]).splitlines()
    assert lines[0] == "| p | k |"
    assert lines[2] == "| 7 | 2 |"
    assert render_markdown([]) == "_no rows_\n"


def test_render_single_record_as_table():
    assert render({"a": 21}, OutputFormat.CSV) == "a\n21\n"


def test_jsonl():
    lines = render_jsonl(ROWS).splitlines()
    assert len(lines) == 2
    assert json.loads(lines[1])["a_mod_p2"] == 41


def test_emit_to_file(tmp_path):
    target = tmp_path / "out.json"
    emit("[]\n", target)
    assert target.read_text() == "[]\n"
