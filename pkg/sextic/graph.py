"""
SexticLab – LangGraph Workflows
===============================
Zulässigkeitsentscheidung und Berechnung der extremen Sextik als Graphen.

Zulässigkeit:   validate → cubic → classify → pencil → curve_sign
Extreme Sextik: dieselben Stufen, danach require_admissible →
                thresholds → candidates → outcome

Jeder Router schickt den Lauf beim ersten Fehler nach END. Ein negatives
Zertifikat beendet die Zulässigkeitsprüfung ebenfalls vorzeitig.
"""

import logging
from typing import Any, Optional, Sequence, TypedDict, Union

from langgraph.graph import END, StateGraph

from sextic.errors import InconsistencyError, NotAdmissibleError
from sextic.models import (
    AdmissibilityCertificate,
    CubicClassification,
    ExceptionalCandidate,
    ExtremePencilResult,
    ThresholdEntry,
)
from sextic.nodes import (
    build_pencil,
    check_curve_sign,
    classify,
    compute_candidates,
    compute_thresholds,
    determine_outcome,
    find_cubic,
    require_admissible,
    validate_points,
)
from sextic.seeding import seed_for
from sextic.ternary_forms import ProjectivePoint, TernaryForm, as_point

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Graph State
# ---------------------------------------------------------------------------

class AdmissibilityState(TypedDict, total=False):
    """State, der durch die Zulässigkeitsprüfung fliesst."""
    points: list
    seed: int
    S: list[ProjectivePoint]
    f: TernaryForm
    cubic: CubicClassification
    q: TernaryForm
    certificate: Optional[AdmissibilityCertificate]
    error: Optional[str]
    exception: Optional[Exception]


class ExtremeState(AdmissibilityState, total=False):
    """Zusätzlich die Stufen der extremen Sextik."""
    generator: Optional[Union[TernaryForm, str]]
    thresholds: list[ThresholdEntry]
    candidates: list[ExceptionalCandidate]
    result: Optional[ExtremePencilResult]


# ---------------------------------------------------------------------------
# Routing-Logik
# ---------------------------------------------------------------------------

def should_continue_after_validation(state: AdmissibilityState) -> str:
    if state.get("error"):
        return "error"
    return "continue"


def should_continue_after_stage(state: AdmissibilityState) -> str:
    if state.get("error"):
        return "error"
    if state.get("certificate") is not None:
        return "done"
    return "continue"


def should_continue_after_check(state: ExtremeState) -> str:
    if state.get("error"):
        return "error"
    return "continue"


# ---------------------------------------------------------------------------
# Graph bauen
# ---------------------------------------------------------------------------

def _add_admissibility_stages(workflow: StateGraph, done: str) -> None:
    workflow.add_node("validate", validate_points)
    workflow.add_node("cubic", find_cubic)
    workflow.add_node("classify", classify)
    workflow.add_node("pencil", build_pencil)
    workflow.add_node("curve_sign", check_curve_sign)

    workflow.set_entry_point("validate")

    workflow.add_conditional_edges(
        "validate",
        should_continue_after_validation,
        {"continue": "cubic", "error": END},
    )
    for source, target in (("cubic", "classify"), ("classify", "pencil"), ("pencil", "curve_sign")):
        workflow.add_conditional_edges(
            source,
            should_continue_after_stage,
            {"continue": target, "done": done, "error": END},
        )


def build_admissibility_graph():
    """Baut den Workflow der Zulässigkeitsprüfung."""
    workflow = StateGraph(AdmissibilityState)
    _add_admissibility_stages(workflow, END)
    workflow.add_edge("curve_sign", END)
    return workflow.compile()


def build_extreme_graph():
    """Baut den Workflow für q_S; nicht zulässige Mengen enden in require_admissible."""
    workflow = StateGraph(ExtremeState)
    _add_admissibility_stages(workflow, "require_admissible")

    workflow.add_node("require_admissible", require_admissible)
    workflow.add_node("thresholds", compute_thresholds)
    workflow.add_node("candidates", compute_candidates)
    workflow.add_node("outcome", determine_outcome)

    workflow.add_conditional_edges(
        "curve_sign",
        should_continue_after_validation,
        {"continue": "require_admissible", "error": END},
    )
    workflow.add_conditional_edges(
        "require_admissible",
        should_continue_after_validation,
        {"continue": "thresholds", "error": END},
    )
    workflow.add_conditional_edges(
        "thresholds",
        should_continue_after_check,
        {"continue": "candidates", "error": END},
    )
    workflow.add_conditional_edges(
        "candidates",
        should_continue_after_check,
        {"continue": "outcome", "error": END},
    )
    workflow.add_edge("outcome", END)

    return workflow.compile()


# ---------------------------------------------------------------------------
# Öffentliche Einstiegspunkte
# ---------------------------------------------------------------------------

def _initial_state(points: Sequence[Any], seed: Optional[int]) -> dict:
    points = list(points)
    if seed is None:
        try:
            seed = seed_for([as_point(p) for p in points])
        except Exception:
            seed = seed_for([str(p) for p in points])
    return {"points": points, "seed": seed, "certificate": None, "error": None, "exception": None}


def _reraise(state: dict) -> None:
    if state.get("error"):
        exception = state.get("exception")
        if isinstance(exception, Exception):
            raise exception
        raise InconsistencyError(state["error"])


def run_admissibility(points: Sequence[Any], seed: Optional[int] = None) -> AdmissibilityState:
    """
    Führt die Zulässigkeitsprüfung durch.

    Args:
        points: neun Punkte (ProjectivePoint oder Koordinatentripel)
        seed: Basis-Seed; Default aus dem Digest der Punkte

    Returns:
        Der finale State; Fehler stehen unter "error"
    """
    graph = build_admissibility_graph()
    return graph.invoke(_initial_state(points, seed))


def run_extreme(
    points: Sequence[Any],
    seed: Optional[int] = None,
    generator: Optional[Union[TernaryForm, str]] = None,
) -> ExtremeState:
    """Führt die komplette Berechnung von q_S durch (State mit "result")."""
    graph = build_extreme_graph()
    initial = _initial_state(points, seed)
    initial["result"] = None
    initial["generator"] = generator
    return graph.invoke(initial)


def check_admissible(points: Sequence[Any], seed: Optional[int] = None) -> AdmissibilityCertificate:
    """
    Operative Zulässigkeitsentscheidung für neun rationale Punkte.

    Raises:
        InvalidInputError: nicht genau neun verschiedene rationale Punkte
    """
    state = run_admissibility(points, seed)
    _reraise(state)
    return state["certificate"]


def extreme_sextic(
    points: Sequence[Any],
    seed: Optional[int] = None,
    generator: Optional[Union[TernaryForm, str]] = None,
) -> ExtremePencilResult:
    """
    Die extreme psd Sextik q_S = q + s·f² einer zulässigen Menge.

    Ohne generator ist q der reduzierte Erzeuger aus I_6(2S); ein gegebener
    Erzeuger aus span(f², q) legt fest, worauf sich s bezieht.

    Raises:
        InvalidInputError: ungültige Eingabe oder Erzeuger nicht im Bleistift
        NotAdmissibleError: die Menge ist nicht zulässig (Zertifikat am Fehler)
        UnsupportedCaseError: q_S hätte eine mehrfache Komponente
    """
    state = run_extreme(points, seed, generator)
    _reraise(state)
    result = state.get("result")
    if result is None:
        raise NotAdmissibleError("Keine extreme Sextik berechnet", state.get("certificate"))
    return result
