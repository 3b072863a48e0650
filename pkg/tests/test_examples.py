from __future__ import annotations

import pytest

from sextic.examples import (
    CHECKS,
    list_examples,
    robinson_family_sextic,
    run_example,
    run_examples,
    symmetric_points,
    symmetric_sextic,
)
from sextic.ternary_forms import ProjectivePoint, is_singular_at, point_in


def _fixture(fixtures, name: str) -> dict:
    return next(e for e in fixtures["examples"] if e["name"] == name)


def test_list_examples(fixtures) -> None:
    listed = list_examples(fixtures)
    assert [example_id for example_id, _, _ in listed] == ["5.1", "5.2", "5.3", "5.4", "5.5"]
    assert [name for _, name, _ in listed] == ["elliptic", "triangle", "a3", "robinson", "symmetric"]


def test_short_names_resolve_to_numbers(fixtures, monkeypatch) -> None:
    seen = []
    monkeypatch.setitem(CHECKS, "a3", lambda fixture, report: seen.append(fixture["id"]))
    report = run_example("a3", fixtures)
    assert report.example_id == "5.3"
    assert seen == ["5.3"]
    result = run_examples(only=["5.3"], fixtures=fixtures)
    assert [r.example_id for r in result.examples] == ["5.3"]
    assert seen == ["5.3", "5.3"]


def test_symmetric_points(fixtures) -> None:
    S = symmetric_points(_fixture(fixtures, "symmetric"), 2)
    assert len(S) == 9
    assert point_in(ProjectivePoint.of(2, 1, 1), S)
    assert point_in(ProjectivePoint.of(0, 1, -1), S)


@pytest.mark.parametrize("u", [2, "1/2", -3])
def test_symmetric_sextic_is_singular_on_ten_points(fixtures, u) -> None:
    points = symmetric_points(_fixture(fixtures, "symmetric"), u) + [ProjectivePoint.of(1, 1, 1)]
    q = symmetric_sextic(u)
    assert q.degree == 6
    assert all(is_singular_at(q, P) for P in points)


def test_robinson_family_at_one(fixtures, robinson) -> None:
    assert robinson_family_sextic(_fixture(fixtures, "robinson"), 1) == robinson * 3


def test_unknown_example_id(fixtures) -> None:
    with pytest.raises(KeyError):
        run_examples(only=["9.9"], fixtures=fixtures)
    with pytest.raises(KeyError):
        run_example("9.9", fixtures)


@pytest.mark.slow
@pytest.mark.parametrize("example_id", ["5.1", "5.2", "5.3", "5.4", "5.5"])
def test_worked_example(fixtures, example_id: str) -> None:
    report = run_example(example_id, fixtures)
    failed = [f"{c.name}: {c.detail}" for c in report.checks if not c.passed]
    assert report.checks
    assert not failed
