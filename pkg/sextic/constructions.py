"""
SexticLab – Konstruktionen für acht und zehn Punkte
===================================================
Zu acht Punkten T in allgemeiner Lage eine psd Sextik, die in T
verschwindet und keine Quadratsumme ist. Drei Wege, in dieser Reihenfolge:

1. Q ∉ T rational: extreme Sextik von T ∪ {Q}
2. Q ∈ T: g ∈ I_6(2T) mit Kontaktordnung >= 4 in Q entlang X (Zweig als
   Potenzreihe), dann g + f'² + t·f²
3. sonst, falls der neunte Basispunkt E nicht in T liegt:
   g + t·(f1² + f2²) mit g(E) > 0

t wird verdoppelt, bis verify_psd zustimmt, und danach per Bisektion
verkleinert.

Zehn Punkte: einen Punkt P weglassen, q_S der übrigen neun berechnen,
q_S(P) = 0 entscheidet.
"""

from __future__ import annotations

import logging
import random
from itertools import combinations
from typing import Callable, Optional

from sympy import Matrix, Rational

from sextic import config
from sextic.admissibility import ninth_point_for_eight, rational_point_set, second_generator
from sextic.cubic_analysis import (
    V,
    branch_expansion,
    local_chart,
    ninth_base_point,
    restrict_to_branch,
    semidefinite_on_curve,
)
from sextic.errors import (
    InconsistencyError,
    NotAdmissibleError,
    RetryExhaustedError,
    UnsupportedCaseError,
)
from sextic.extreme_pencil import verify_psd
from sextic.graph import check_admissible, extreme_sextic
from sextic.interpolation import check_general_position, in_span, products, singular_at, vanishing
from sextic.models import CurveSign, EightPointMethod, EightPointSextic, TenPointOutcome
from sextic.seeding import make_rng
from sextic.ternary_forms import (
    ProjectivePoint,
    TernaryForm,
    collinear,
    evaluate,
    vanishes_at,
)

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# psd-Multiplikator
# ---------------------------------------------------------------------------

def smallest_psd_multiplier(
    family: Callable[[Rational], TernaryForm],
    rng: random.Random,
    start: Rational = Rational(1),
) -> Rational:
    """
    Rationales t mit family(t) psd: verdoppeln bis psd, danach
    BISECTION_STEPS Bisektionsschritte nach unten.

    Raises:
        RetryExhaustedError: nach PSD_MAX_DOUBLINGS Verdopplungen nicht psd
    """
    t = Rational(start)
    lower = Rational(0)
    for _ in range(config.PSD_MAX_DOUBLINGS):
        if verify_psd(family(t), rng=rng).psd:
            break
        lower = t
        t *= 2
    else:
        raise RetryExhaustedError(f"Kein psd-Multiplikator bis t = {t}")
    upper = t
    for _ in range(config.BISECTION_STEPS):
        middle = (lower + upper) / 2
        if verify_psd(family(middle), rng=rng).psd:
            upper = middle
        else:
            lower = middle
    logger.info(f"📊 psd-Multiplikator t = {upper} (nicht psd bei {lower})")
    return upper


# ---------------------------------------------------------------------------
# Acht Punkte
# ---------------------------------------------------------------------------

def _sextic_outside_squares(T: list[ProjectivePoint], cubics: list[TernaryForm]) -> list[TernaryForm]:
    squares = products(cubics)
    return [g for g in singular_at(T, 6).basis if not in_span(g, squares)]


def tangency_jet_sextic(
    T: list[ProjectivePoint],
    f: TernaryForm,
    Q: ProjectivePoint,
    rng: random.Random,
) -> TernaryForm:
    """
    g ∈ I_6(2T) mit Kontaktordnung >= 4 in Q entlang V(f), vorzeichennormiert
    auf X(R). Auf X ist der Divisor von g dann 2(T∖{Q}) + 4Q.

    Raises:
        InconsistencyError: Jet-System ohne Lösung oder g indefinit auf X(R)
    """
    cubics = vanishing(T, 3).basis
    f_other = second_generator(cubics, f)
    g0 = _sextic_outside_squares(T, list(cubics))[0]
    chart = local_chart(f, Q, [f_other ** 2, g0])
    phi = branch_expansion(chart, 4)
    restricted = [restrict_to_branch(h, phi, 4) for h in chart.others]
    rows = [[Rational(r.coeff_monomial(V ** k)) for r in restricted] for k in (2, 3)]
    kernel = Matrix(rows).nullspace()
    weights = next((v for v in kernel if v[1] != 0), None)
    if weights is None:
        raise InconsistencyError(f"Keine Sextik mit Kontaktordnung 4 in {Q}")
    g = f_other ** 2 * weights[0] + g0 * weights[1]
    sign = semidefinite_on_curve(f, g, rng)
    if sign is CurveSign.NONPOSITIVE:
        g = -g
    elif sign is not CurveSign.NONNEGATIVE:
        raise InconsistencyError(f"Jet-Sextik ist auf X(R) {sign.value}")
    return g


def _extreme_path(T, outcome) -> Optional[EightPointSextic]:
    S = T + [outcome.point]
    try:
        result = extreme_sextic(S)
    except (NotAdmissibleError, UnsupportedCaseError) as e:
        logger.warning(f"⚠️ Extreme Sextik für T ∪ {{Q}} nicht verfügbar: {e}")
        return None
    s = result.s
    upper = s.rational_value if s.is_rational else s.refine(Rational(1, 10 ** 6)).hi
    return EightPointSextic(
        form=result.form_at(upper),
        method=EightPointMethod.EXTREME_NINTH_POINT,
        ninth_point=outcome.point,
        multiplier=upper,
    )


def _jet_path(T, outcome, rng: random.Random) -> EightPointSextic:
    Q = outcome.point
    f = outcome.cubic
    f_other = second_generator(vanishing(T, 3).basis, f)
    g = tangency_jet_sextic(T, f, Q, rng)
    base = g + f_other ** 2
    square = f ** 2
    t = smallest_psd_multiplier(lambda t: base + square * t, rng)
    return EightPointSextic(
        form=base + square * t,
        method=EightPointMethod.TANGENCY_JET,
        ninth_point=Q,
        multiplier=t,
    )


def _hilbert_path(T, rng: random.Random) -> EightPointSextic:
    f1, f2 = vanishing(T, 3).basis
    E = ninth_base_point(f1, f2, T, rng)
    if E.in_t:
        raise UnsupportedCaseError(f"Neunter Basispunkt {E.point} liegt in T")
    g = None
    for b in singular_at(T, 6).basis:
        value = evaluate(b, E.point)
        if value != 0:
            g = b if value > 0 else -b
            break
    if g is None:
        raise UnsupportedCaseError(f"Alle Sextiken aus I_6(2T) verschwinden in {E.point}")
    squares = f1 ** 2 + f2 ** 2
    t = smallest_psd_multiplier(lambda t: g + squares * t, rng)
    return EightPointSextic(form=g + squares * t, method=EightPointMethod.HILBERT, multiplier=t)


def psd_nonsos_through_eight(T, seed: Optional[int] = None) -> EightPointSextic:
    """
    psd Sextik, die in T verschwindet und nicht in span I_3(T)² liegt.

    Args:
        T: acht rationale Punkte, keine 4 kollinear, keine 7 auf einem Kegelschnitt
        seed: Basis-Seed; Default aus dem Digest von T

    Raises:
        InvalidInputError: Lageverletzung
        UnsupportedCaseError: kein Weg anwendbar (E ∈ T ohne rationalen Kandidaten)
    """
    T = rational_point_set(T, 8)
    check_general_position(T)
    rng = make_rng("eight-point", T, seed=seed)
    outcome = None
    try:
        outcome = ninth_point_for_eight(T, rng=rng)
    except UnsupportedCaseError as e:
        logger.warning(f"⚠️ Kein Kandidat Q: {e}")

    if outcome is not None and outcome.found and isinstance(outcome.point, ProjectivePoint):
        if not outcome.in_t:
            logger.info(f"🔍 Weg 1: extreme Sextik von T ∪ {{{outcome.point}}}")
            found = _extreme_path(T, outcome)
            if found is not None:
                return found
        else:
            logger.info(f"🔍 Weg 2: Jet-Konstruktion in Q = {outcome.point}")
            return _jet_path(T, outcome, rng)
    logger.info("🔍 Weg 3: Hilbert-Konstruktion")
    return _hilbert_path(T, rng)


# ---------------------------------------------------------------------------
# Zehn Punkte
# ---------------------------------------------------------------------------

def check_ten_point_set(U, seed: Optional[int] = None) -> TenPointOutcome:
    """
    Gibt es eine psd Sextik mit Nullstellen in U (|U| = 10)?

    P ist der erste Punkt von U. Ist S = U∖{P} nicht zulässig, gibt es keine;
    sonst ist q_S der einzige Kandidat und q_S(P) = 0 entscheidet.

    Raises:
        InvalidInputError: nicht genau zehn verschiedene rationale Punkte
    """
    U = rational_point_set(U, 10)
    for quadruple in combinations(U, 4):
        if collinear(quadruple):
            return TenPointOutcome(
                possible=False,
                reason=f"Vier Punkte auf einer Geraden: {', '.join(map(str, quadruple))}",
            )
    P, S = U[0], U[1:]
    certificate = check_admissible(S, seed)
    if not certificate.admissible:
        return TenPointOutcome(
            possible=False,
            removed_point=P,
            reason=f"U ohne {P} ist nicht zulässig ({certificate.reason.value})",
        )
    result = extreme_sextic(S, seed)
    fp = evaluate(result.f, P)
    if fp == 0:
        # q(P) != 0, da q auf X nur in S verschwindet
        return TenPointOutcome(possible=False, removed_point=P, reason=f"{P} liegt auf X und q(P) != 0")
    needed = -evaluate(result.q, P) / fp ** 2
    if result.s.compare(needed) != 0:
        logger.info(f"⚠️ q_S({P}) != 0")
        return TenPointOutcome(possible=False, removed_point=P, reason=f"q_S verschwindet nicht in {P}")
    form = result.form_at(needed)
    if not vanishes_at(form, P):
        raise InconsistencyError(f"q_S({P}) != 0 trotz passendem s")
    logger.info(f"✅ psd Sextik mit Nullstellen in U gefunden (s = {needed})")
    return TenPointOutcome(possible=True, form=form, removed_point=P)
