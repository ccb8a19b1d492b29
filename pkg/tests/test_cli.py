"""Tests for the command-line interface"""

import json
from fractions import Fraction

import pytest
from click.testing import CliRunner

import simplest_cubic.cli as cli_module
from simplest_cubic.cli import cli, run
from simplest_cubic.field_core import make_context


@pytest.fixture
def runner(tmp_path, monkeypatch):
    monkeypatch.setenv("SC_CONFIG_DIR", str(tmp_path))
    monkeypatch.delenv("SC_THREADS", raising=False)
    return CliRunner()


def test_classify(runner):
    result = runner.invoke(cli, ["classify", "--a", "21"])
    assert result.exit_code == 0, result.output
    data = json.loads(result.output)
    assert data["module_index"] == 3
    assert data["basis"] == "B3(1,1)"
    assert data["in_p3_family"] is True


def test_classify_range(runner):
    result = runner.invoke(cli, ["classify", "--a", "40..42"])
    assert result.exit_code == 0, result.output
    data = json.loads(result.output)
    assert [row["a"] for row in data] == [40, 41, 42]
    assert data[1]["basis"] == "B7(4,3)"


def test_basis(runner):
    result = runner.invoke(cli, ["basis", "--a", "41"])
    assert result.exit_code == 0, result.output
    data = json.loads(result.output)
    assert (data["p"], data["k"], data["l"]) == (7, 4, 3)
    assert data["g3"] == ["4/7", "3/7", "1/7"]


def test_table1_markdown(runner):
    result = runner.invoke(cli, ["table1", "--pmax", "103", "--format", "markdown"])
    assert result.exit_code == 0, result.output
    lines = result.output.splitlines()
    assert lines[0] == "| p | a_mod_p2 | k | l |"
    assert len(lines) == 2 + 24
    assert "| 103 | 10335 | 56 | 11 |" in lines


def test_table1_json(runner):
    result = runner.invoke(cli, ["table1", "--pmax", "13"])
    rows = json.loads(result.output)
    assert [(r["p"], r["a_mod_p2"]) for r in rows] == [(7, 5), (7, 41), (13, 66), (13, 100)]


def test_indecomposables(runner):
    result = runner.invoke(cli, ["indecomposables", "--a", "21"])
    assert result.exit_code == 0, result.output
    rows = json.loads(result.output)
    assert len(rows) == 72
    assert rows[0]["family"] == "unit1"


def test_indecomposables_range_skips_non_family(runner):
    result = runner.invoke(cli, ["indecomposables", "--a", "20..22", "--format", "csv"])
    assert result.exit_code == 0, result.output
    assert len(result.output.splitlines()) == 1 + 72


def test_indecomposables_outside_family(runner):
    result = runner.invoke(cli, ["indecomposables", "--a", "41"])
    assert result.exit_code == 1
    assert "not in the family" in result.output


def test_candidates_jsonl(runner):
    result = runner.invoke(cli, ["candidates", "--a", "21"])
    assert result.exit_code == 0, result.output
    lines = result.output.splitlines()
    assert len(lines) == 5 + 3 * 507 - 1
    assert json.loads(lines[0])["parallelepiped"] == "first"


def test_candidates_map(runner):
    result = runner.invoke(cli, ["candidates", "--a", "21", "--map"])
    assert result.exit_code == 0, result.output
    assert "s = 2" in result.output and "S15" in result.output


def test_verify(runner):
    result = runner.invoke(cli, ["verify", "--a", "21", "--no-certify"])
    assert result.exit_code == 0, result.output
    assert "72 indecomposables verified" in result.output


def test_verify_respects_oracle_cap(runner):
    result = runner.invoke(cli, ["verify", "--a", "57", "--max-a-oracle", "48"])
    assert result.exit_code == 1
    assert "oracle cap" in result.output


def test_mintrace(runner):
    result = runner.invoke(cli, ["mintrace", "--a", "21", "--coords", "0", "0", "1"])
    assert result.exit_code == 0, result.output
    data = json.loads(result.output)
    assert data["min_trace"] == 1 and data["certified"] is True


def test_mintrace_not_totally_positive(runner):
    result = runner.invoke(cli, ["mintrace", "--a", "21", "--coords", "0", "1", "0"])
    assert result.exit_code == 1


def test_norms(runner):
    result = runner.invoke(cli, ["norms", "--a", "21"])
    assert result.exit_code == 0, result.output
    data = json.loads(result.output)
    assert (data["min_nonrational"], data["max_indec"]) == (19, 855)


def test_uqf(runner):
    result = runner.invoke(cli, ["uqf", "--a", "21"])
    data = json.loads(result.output)
    assert data["diag_upper"] == 432 and data["classical_lower"] == "28/3"


def test_out_file(runner, tmp_path):
    target = tmp_path / "classify.json"
    result = runner.invoke(cli, ["classify", "--a", "21", "--out", str(target)])
    assert result.exit_code == 0
    assert json.loads(target.read_text())["a"] == 21


def test_run_exit_codes(tmp_path, monkeypatch):
    monkeypatch.setenv("SC_CONFIG_DIR", str(tmp_path))
    assert run(["classify", "--a", "21", "--out", str(tmp_path / "x.json")]) == 0
    assert run(["classify", "--bogus"]) == 1
    assert run(["nonsense"]) == 1
    assert run(["classify", "--a", "x"]) == 1
    assert run(["uqf", "--a", "66"]) == 1
    assert run(["--help"]) == 0


def test_precision_bits_reach_the_field_context(runner, tmp_path, monkeypatch):
    (tmp_path / "config.json").write_text(json.dumps({"precision_bits": 80}))
    seen = []

    def recording_context(a, precision):
        seen.append(precision)
        return make_context(a, precision)

    monkeypatch.setattr(cli_module, "make_context", recording_context)
    result = runner.invoke(cli, ["norms", "--a", "21"])
    assert result.exit_code == 0, result.output
    assert seen == [Fraction(1, 2**80)]
