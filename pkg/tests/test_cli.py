from __future__ import annotations

import json
from pathlib import Path

import pytest
from sympy import Rational

from sextic.cli import (
    EXIT_INVALID,
    EXIT_NEGATIVE,
    EXIT_POSITIVE,
    POINT_COMMANDS,
    field_display,
    load_form,
    load_points,
    main,
)
from sextic.errors import InvalidInputError
from sextic.exact_arith import NumberField, RealAlgebraicNumber
from sextic.models import RunReport
from sextic.ternary_forms import ProjectivePoint

POINTS_DIR = Path(__file__).resolve().parents[1] / "eval" / "points"
TRIANGLE = str(POINTS_DIR / "triangle.json")


def _report(capsys) -> RunReport:
    return RunReport.model_validate_json(capsys.readouterr().out)


# ---------------------------------------------------------------------------
# Eingaben
# ---------------------------------------------------------------------------

def test_load_points_from_file_and_inline() -> None:
    from_file = load_points(TRIANGLE)
    assert len(from_file) == 9
    inline = load_points(json.dumps({"points": [["0", "1", "1"], ["1/2", "0", "1"]]}))
    assert inline == [ProjectivePoint.of(0, 1, 1), ProjectivePoint.of(1, 0, 2)]
    assert load_points('[["1", "1", "0"]]') == [ProjectivePoint.of(1, 1, 0)]


@pytest.mark.parametrize(
    "value",
    [
        '{"points": [["0", "1", "1"]',
        '{"points": [["0", "1"]]}',
        '{"points": [["0", "0", "0"]]}',
        '{"coords": []}',
    ],
)
def test_load_points_rejects_broken_documents(value: str) -> None:
    with pytest.raises(InvalidInputError):
        load_points(value)


def test_load_form_accepts_text_and_json(robinson) -> None:
    assert load_form(str(POINTS_DIR / "robinson_form.txt")) == robinson
    document = json.dumps({"degree": 2, "terms": [{"e": [2, 0, 0], "c": "1"}, {"e": [0, 2, 0], "c": "-1/2"}]})
    assert load_form(document).to_text() == load_form("x^2 - 1/2*y^2").to_text()


def test_long_inline_json_is_not_treated_as_path() -> None:
    rows = [[str(k), str(k * k), "1"] for k in range(1, 40)]
    assert len(load_points(json.dumps(rows))) == 39


# ---------------------------------------------------------------------------
# Befehle
# ---------------------------------------------------------------------------

def test_admissible_triangle(capsys) -> None:
    assert main(["admissible", TRIANGLE, "--json"]) == EXIT_POSITIVE
    report = _report(capsys)
    assert report.command == "admissible"
    assert report.exit_code == EXIT_POSITIVE
    assert report.payload["admissible"] is True
    assert not report.seed_overridden


def test_truncated_json_exits_with_two(capsys) -> None:
    assert main(["admissible", '{"points": [["0", "1", "1"]', "--json"]) == EXIT_INVALID
    assert _report(capsys).payload["error"] == "InvalidInputError"


def test_wrong_point_count_exits_with_two() -> None:
    assert main(["admissible", '[["0", "1", "1"], ["1", "0", "1"]]']) == EXIT_INVALID


def test_verify_psd(capsys) -> None:
    assert main(["verify-psd", str(POINTS_DIR / "robinson_form.txt")]) == EXIT_POSITIVE
    capsys.readouterr()
    assert main(["verify-psd", "x^2 - y^2", "--json"]) == EXIT_NEGATIVE
    report = _report(capsys)
    assert [v.label for v in report.display][-1] == "Wert"


def test_seed_override_is_reported(capsys) -> None:
    main(["verify-psd", "x^2 + y^2", "--json", "--seed-override", "5"])
    report = _report(capsys)
    assert report.seed == 5
    assert report.seed_overridden


def test_timing_flag(capsys) -> None:
    main(["verify-psd", "x^2 + y^2", "--json"])
    assert _report(capsys).wall_time_seconds is None
    main(["verify-psd", "x^2 + y^2", "--json", "--timing"])
    assert _report(capsys).wall_time_seconds is not None


@pytest.mark.slow
def test_symmetric_set_is_not_admissible() -> None:
    assert main(["admissible", str(POINTS_DIR / "symmetric_u_half.json")]) == EXIT_NEGATIVE


def test_unexpected_errors_exit_with_two(monkeypatch, capsys) -> None:
    def broken(points, seed, digits):
        raise ZeroDivisionError("kaputt")

    monkeypatch.setitem(POINT_COMMANDS, "admissible", broken)
    assert main(["admissible", TRIANGLE, "--json"]) == EXIT_INVALID
    assert _report(capsys).payload["error"] == "ZeroDivisionError"


def test_constant_form_is_psd(capsys) -> None:
    assert main(["verify-psd", "5", "--json"]) == EXIT_POSITIVE
    assert _report(capsys).payload["psd"] is True


def test_field_display_shows_s_in_theta() -> None:
    theta = NumberField.from_root(RealAlgebraicNumber.from_interval("X^2 - 2", 1, 2)).generator()
    value = field_display("s", (theta * theta * 165 + theta * 60 + 1156) * Rational(1, 49), 5)
    assert value.exact.startswith("60*θ/49 + 1486/49, θ = Wurzel von θ**2 - 2 in [")
    assert value.approx == "32.05822"


@pytest.mark.slow
def test_extreme_triangle(fixtures, capsys) -> None:
    generator = next(e for e in fixtures["examples"] if e["name"] == "triangle")["sextic"]
    argv = ["extreme", TRIANGLE, "--json", "--precision", "5", "--generator", generator]
    assert main(argv) == EXIT_POSITIVE
    report = _report(capsys)
    s = next(v for v in report.display if v.label == "s")
    assert s.approx.startswith("114.6814")
    assert "θ" in s.exact
    assert "qS" in report.payload


# ---------------------------------------------------------------------------
# Beispiele und Cache
# ---------------------------------------------------------------------------

def test_examples_list(capsys) -> None:
    assert main(["examples", "list"]) == EXIT_POSITIVE
    out = capsys.readouterr().out
    for example_id in ("5.1", "5.2", "5.3", "5.4", "5.5", "elliptic", "a3"):
        assert example_id in out


def test_examples_unknown_id() -> None:
    assert main(["examples", "run", "--only", "9.9"]) == EXIT_INVALID


@pytest.mark.slow
def test_examples_run_a3_by_number(capsys) -> None:
    assert main(["examples", "run", "--only", "5.3", "--json"]) == EXIT_POSITIVE
    out = json.loads(capsys.readouterr().out)
    assert [e["example_id"] for e in out["examples"]] == ["5.3"]


def test_cache_round_trip(db_path, capsys) -> None:
    assert main(["admissible", TRIANGLE, "--cache", "--json"]) == EXIT_POSITIVE
    first = _report(capsys)
    assert main(["admissible", TRIANGLE, "--cache", "--json"]) == EXIT_POSITIVE
    assert _report(capsys) == first

    assert main(["stats", "--json"]) == EXIT_POSITIVE
    stats = json.loads(capsys.readouterr().out)
    assert stats["total_reports"] == 1
    assert stats["by_command"] == {"admissible": 1}

    assert main(["history", "--json"]) == EXIT_POSITIVE
    history = json.loads(capsys.readouterr().out)
    assert history[0]["input_digest"] == first.input_digest


def test_invalid_runs_are_not_cached(db_path, capsys) -> None:
    main(["admissible", "[]", "--cache"])
    capsys.readouterr()
    main(["stats", "--json"])
    assert json.loads(capsys.readouterr().out)["total_reports"] == 0
