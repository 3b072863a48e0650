from __future__ import annotations

import pytest

from sextic.errors import InvalidInputError
from sextic.examples import symmetric_points
from sextic.graph import (
    run_admissibility,
    should_continue_after_check,
    should_continue_after_stage,
    should_continue_after_validation,
)
from sextic.models import AdmissibilityReason


# ---------------------------------------------------------------------------
# Routing-Logik
# ---------------------------------------------------------------------------

@pytest.mark.parametrize(
    ("state", "expected"),
    [
        ({"error": "kaputt"}, "error"),
        ({"error": None}, "continue"),
        ({}, "continue"),
    ],
)
def test_should_continue_after_validation(state: dict, expected: str) -> None:
    assert should_continue_after_validation(state) == expected
    assert should_continue_after_check(state) == expected


def test_should_continue_after_stage() -> None:
    assert should_continue_after_stage({"error": "kaputt", "certificate": object()}) == "error"
    assert should_continue_after_stage({"certificate": object()}) == "done"
    assert should_continue_after_stage({"certificate": None}) == "continue"


# ---------------------------------------------------------------------------
# Workflow
# ---------------------------------------------------------------------------

def test_invalid_points_end_with_error(triangle_nine) -> None:
    state = run_admissibility(triangle_nine[:5])
    assert state["error"]
    assert isinstance(state["exception"], InvalidInputError)
    assert state.get("certificate") is None


def test_early_certificate_stops_the_workflow(fixtures) -> None:
    fixture = next(e for e in fixtures["examples"] if e["name"] == "symmetric")
    state = run_admissibility(symmetric_points(fixture, -2))
    assert not state["error"]
    assert state["certificate"].reason is AdmissibilityReason.NO_UNIQUE_CUBIC
    assert "cubic" not in state


def test_admissible_run_fills_the_state(triangle_nine) -> None:
    state = run_admissibility(triangle_nine, seed=3)
    assert state["seed"] == 3
    assert state["certificate"].admissible
    assert state["f"].degree == 3
    assert state["q"].degree == 6
