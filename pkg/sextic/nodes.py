"""
SexticLab – Pipeline-Nodes
==========================
Jeder Node ist ein Schritt der Zulässigkeitsentscheidung bzw. der
Berechnung der extremen Sextik. Nodes lesen vom State, rechnen exakt und
schreiben das Ergebnis zurück in den State.

Fehlerbehandlung wie in allen Nodes: Exceptions verlassen den Node nie.
Die Meldung landet unter "error", die Exception selbst unter "exception";
die öffentliche Funktion in graph.py löst sie erneut aus.

Ein negatives Zertifikat ist kein Fehler: der Node setzt "certificate"
und der Router beendet den Lauf.
"""

import logging
from typing import Optional

from sextic.cubic_analysis import classify_cubic, semidefinite_on_curve
from sextic.errors import InconsistencyError, InvalidInputError, NotAdmissibleError
from sextic.extreme_pencil import compute_extreme, exceptional_candidates, local_thresholds
from sextic.interpolation import pencil_second_generator, reference_generator, singular_at, vanishing
from sextic.models import (
    AdmissibilityCertificate,
    AdmissibilityReason,
    CurveSign,
)
from sextic.seeding import make_rng
from sextic.ternary_forms import as_form, as_point, is_singular_at, point_in

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Helpers
# ---------------------------------------------------------------------------

def _failure(step: str, e: Exception) -> dict:
    logger.error(f"❌ Fehler in {step}: {type(e).__name__}: {e}")
    return {"error": f"Fehler in {step}: {e}", "exception": e}


def _rejected(state: dict, reason: AdmissibilityReason, detail: str, **fields) -> dict:
    logger.info(f"⚠️ Nicht zulässig ({reason.value}): {detail}")
    certificate = AdmissibilityCertificate(
        admissible=False,
        points=state["S"],
        reason=reason,
        detail=detail,
        **fields,
    )
    return {"certificate": certificate}


def _rng(state: dict, label: str):
    return make_rng(label, state["S"], seed=state.get("seed"))


# ---------------------------------------------------------------------------
# Zulässigkeit
# ---------------------------------------------------------------------------

def validate_points(state: dict) -> dict:
    """
    Input:  state["points"] (neun Punkte, beliebige Darstellung)
    Output: state["S"] (list[ProjectivePoint])
    """
    try:
        S = [as_point(p) for p in state["points"]]
        if not all(p.is_rational for p in S):
            raise InvalidInputError("Nur rationale Punkte werden unterstützt")
        if len(S) != 9:
            raise InvalidInputError(f"Neun Punkte erwartet, erhalten: {len(S)}")
        for i, P in enumerate(S):
            if point_in(P, S[:i]):
                raise InvalidInputError(f"Punkt {P} kommt doppelt vor")
        logger.info(f"🔍 Prüfe Zulässigkeit von {len(S)} Punkten")
        return {"S": S}
    except Exception as e:
        return _failure("validate_points", e)


def find_cubic(state: dict) -> dict:
    """
    Input:  state["S"]
    Output: state["f"] (eindeutige Kubik) oder negatives Zertifikat
    """
    try:
        cubics = vanishing(state["S"], 3)
        if cubics.dimension != 1:
            return _rejected(
                state,
                AdmissibilityReason.NO_UNIQUE_CUBIC,
                f"dim I_3(S) = {cubics.dimension}",
            )
        f = cubics.basis[0].canonical()
        logger.info(f"📊 Eindeutige Kubik: {f}")
        return {"f": f}
    except Exception as e:
        return _failure("find_cubic", e)


def classify(state: dict) -> dict:
    """
    Input:  state["f"]
    Output: state["cubic"] (CubicClassification) oder negatives Zertifikat
    """
    try:
        f = state["f"]
        singular = [P for P in state["S"] if is_singular_at(f, P)]
        cubic = classify_cubic(f, _rng(state, "classify"))
        if singular:
            return _rejected(
                state,
                AdmissibilityReason.POINT_SINGULAR_ON_CUBIC,
                f"{singular[0]} ist singulär auf V(f)",
                cubic=cubic,
            )
        if not cubic.type_tag.admissible:
            return _rejected(
                state,
                AdmissibilityReason.CUBIC_TYPE_EXCLUDED,
                cubic.inadmissible_reason or cubic.type_tag.value,
                cubic=cubic,
            )
        logger.info(f"✅ Kubik vom Typ {cubic.type_tag.value}")
        return {"cubic": cubic}
    except Exception as e:
        return _failure("classify", e)


def build_pencil(state: dict) -> dict:
    """
    Input:  state["S"], state["f"]
    Output: state["q"] (zweiter Erzeuger von I_6(2S) modulo f²)
    """
    try:
        sextics = singular_at(state["S"], 6)
        if sextics.dimension != 2:
            return _rejected(
                state,
                AdmissibilityReason.PENCIL_DIMENSION_NOT_TWO,
                f"dim I_6(2S) = {sextics.dimension}",
                cubic=state["cubic"],
            )
        try:
            q = pencil_second_generator(state["S"], state["f"])
        except NotAdmissibleError as e:
            return _rejected(state, AdmissibilityReason.PENCIL_DIMENSION_NOT_TWO, str(e), cubic=state["cubic"])
        return {"q": q}
    except Exception as e:
        return _failure("build_pencil", e)


def check_curve_sign(state: dict) -> dict:
    """
    Input:  state["f"], state["q"]
    Output: state["q"] vorzeichennormiert und das Zertifikat
    """
    try:
        f, q = state["f"], state["q"]
        sign = semidefinite_on_curve(f, q, _rng(state, "curve-sign"))
        if sign is CurveSign.INDEFINITE:
            return _rejected(
                state,
                AdmissibilityReason.INDEFINITE_ON_CURVE,
                "q wechselt auf X(R) das Vorzeichen",
                cubic=state["cubic"],
            )
        if sign is CurveSign.IDENTICALLY_ZERO:
            raise InconsistencyError("q verschwindet auf X(R), obwohl ggT(f, q) = 1")
        if sign is CurveSign.NONPOSITIVE:
            q = -q
        certificate = AdmissibilityCertificate(
            admissible=True,
            points=state["S"],
            cubic=state["cubic"],
            pencil_generator=q,
            reason=AdmissibilityReason.OK,
        )
        logger.info("✅ Punktmenge ist zulässig")
        return {"q": q, "certificate": certificate}
    except Exception as e:
        return _failure("check_curve_sign", e)


# ---------------------------------------------------------------------------
# Extreme Sextik
# ---------------------------------------------------------------------------

def require_admissible(state: dict) -> dict:
    """
    Input:  state["certificate"] aus der Zulässigkeitspipeline, optional state["generator"]
    Output: NotAdmissibleError im State, falls die Menge nicht zulässig ist;
            sonst f und q (ein gegebener Erzeuger ersetzt q)
    """
    certificate: Optional[AdmissibilityCertificate] = state.get("certificate")
    if certificate is None or not certificate.admissible:
        reason = certificate.reason.value if certificate else "unbekannt"
        e = NotAdmissibleError(f"Punktmenge ist nicht zulässig: {reason}", certificate)
        return _failure("require_admissible", e)
    f, q = certificate.cubic.form, certificate.pencil_generator
    if state.get("generator") is not None:
        try:
            q = reference_generator(as_form(state["generator"]), f, q)
        except Exception as e:
            return _failure("require_admissible", e)
    return {"f": f, "q": q}


def compute_thresholds(state: dict) -> dict:
    """
    Input:  state["f"], state["q"], state["S"]
    Output: state["thresholds"] (list[ThresholdEntry])
    """
    try:
        thresholds = local_thresholds(state["f"], state["q"], state["S"])
        largest = max(t.value for t in thresholds)
        logger.info(f"📊 Lokale Schwellen berechnet, max t(P) = {largest}")
        return {"thresholds": thresholds}
    except Exception as e:
        return _failure("compute_thresholds", e)


def compute_candidates(state: dict) -> dict:
    """
    Input:  state["thresholds"] und der Bleistift
    Output: state["candidates"] (list[ExceptionalCandidate])
    """
    try:
        candidates = exceptional_candidates(
            state["f"],
            state["q"],
            state["S"],
            _rng(state, "exceptional"),
            state["thresholds"],
        )
        return {"candidates": candidates}
    except Exception as e:
        return _failure("compute_candidates", e)


def determine_outcome(state: dict) -> dict:
    """
    Input:  state["candidates"]
    Output: state["result"] (ExtremePencilResult)
    """
    try:
        result = compute_extreme(
            state["f"],
            state["q"],
            state["S"],
            _rng(state, "outcome"),
            thresholds=state["thresholds"],
            candidates=state["candidates"],
        )
        return {"result": result}
    except Exception as e:
        return _failure("determine_outcome", e)
