"""
SexticLab – Coble-Nonik
=======================
Zu acht Punkten T in allgemeiner Lage die Nonik N_T = V(det J(f, f', g))
mit I_3(T) = span(f, f') und g ∈ I_6(2T) ∖ I_3(T)².

- N_T hat Grad 9 und hängt nur von T ab (bis auf Skalar)
- jeder Punkt aus T ist ein Tripelpunkt
- für zulässiges S und P ∈ S liegt P auf N_{S∖{P}}
- die zehnte Nullstelle von q_S liegt auf N_{S∖{P}} ∩ N_{S∖{P'}}
"""

import logging
import random
from typing import Optional

from sextic.admissibility import rational_point_set
from sextic.cubic_analysis import ninth_base_point
from sextic.elimination import solve_forms
from sextic.errors import InvalidInputError
from sextic.interpolation import check_general_position, in_span, products, singular_at, vanishing
from sextic.models import CobleNonic, TenthZeroCandidates
from sextic.seeding import make_rng
from sextic.ternary_forms import (
    as_form,
    as_point,
    evaluate,
    form_gcd,
    hessian_matrix,
    is_singular_at,
    jacobian_det,
    point_in,
    vanishes_at,
)

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Nonik
# ---------------------------------------------------------------------------

def coble_nonic(T, g=None) -> CobleNonic:
    """
    Berechnet N_T = det J(f, f', g), kanonisch normiert.

    Args:
        T: acht rationale Punkte, keine 4 kollinear, keine 7 auf einem Kegelschnitt
        g: optionale Sextik aus I_6(2T) ∖ I_3(T)²; Default ist das erste
           Basiselement der reduzierten Stufenform außerhalb von I_3(T)²

    Returns:
        CobleNonic mit Grad-9-Form und der benutzten Basis (f, f', g)

    Raises:
        InvalidInputError: Lageverletzung, falsche Dimensionen oder ungeeignetes g
    """
    T = rational_point_set(T, 8)
    check_general_position(T)

    cubics = vanishing(T, 3)
    sextics = singular_at(T, 6)
    if cubics.dimension != 2 or sextics.dimension != 4:
        raise InvalidInputError(
            f"dim I_3(T) = {cubics.dimension}, dim I_6(2T) = {sextics.dimension}; erwartet 2 und 4"
        )
    f, f_other = cubics.basis
    squares = products(cubics.basis)

    if g is None:
        g = next(b for b in sextics.basis if not in_span(b, squares))
    else:
        g = as_form(g)
        if g.degree != 6 or not all(vanishes_at(g, P) and is_singular_at(g, P) for P in T):
            raise InvalidInputError("g muss eine in T singuläre Sextik sein")
        if in_span(g, squares):
            raise InvalidInputError("g liegt in I_3(T)²")

    j = jacobian_det(f, f_other, g)
    if j.is_zero:
        raise InvalidInputError("Jacobi-Determinante verschwindet identisch")
    nonic = CobleNonic(points=T, form=j.canonical(), basis_used=(f, f_other, g))
    logger.info(f"✅ Coble-Nonik mit {len(nonic.form.terms())} Termen")
    return nonic


def verify_triple_points(nonic: CobleNonic) -> bool:
    """Alle zweiten Ableitungen der Nonik verschwinden in jedem Punkt aus T."""
    hessian = hessian_matrix(nonic.form)
    for P in nonic.points:
        for row in hessian:
            for entry in row:
                if not vanishes_at(entry, P):
                    logger.info(f"⚠️ {P} ist kein Tripelpunkt")
                    return False
    return True


def ninth_zero_membership(S, P) -> bool:
    """P liegt auf N_{S∖{P}}; für zulässiges S immer wahr."""
    S = rational_point_set(S, 9)
    P = as_point(P)
    if not point_in(P, S):
        raise InvalidInputError(f"{P} liegt nicht in S")
    T = [Q for Q in S if Q != P]
    return vanishes_at(coble_nonic(T).form, P)


def ninth_base_point_off_nonic(T) -> bool:
    """
    Der neunte Basispunkt M von I_3(T) liegt nicht auf N_T, außer wenn M ∈ T.
    Gibt True zurück, wenn die Aussage für T zutrifft.
    """
    nonic = coble_nonic(T)
    f, f_other, _ = nonic.basis_used
    M = ninth_base_point(f, f_other, nonic.points)
    if M.in_t:
        logger.info(f"📊 Neunter Basispunkt {M.point} liegt in T")
        return True
    value = evaluate(nonic.form, M.point)
    logger.info(f"📊 N_T({M.point}) = {value}")
    return value != 0


# ---------------------------------------------------------------------------
# Kandidaten für die zehnte Nullstelle
# ---------------------------------------------------------------------------

def tenth_zero_candidates(S, P, P_other, rng: Optional[random.Random] = None) -> TenthZeroCandidates:
    """
    Reelle Schnittpunkte von N_{S∖{P}} und N_{S∖{P'}} außerhalb von S und V(f).

    Gemeinsame Komponenten der beiden Noniken werden vorher abdividiert und
    separat zurückgegeben.

    Raises:
        InvalidInputError: P, P' nicht verschieden oder nicht in S, keine
                           eindeutige Kubik durch S
    """
    S = rational_point_set(S, 9)
    P, P_other = as_point(P), as_point(P_other)
    if not (point_in(P, S) and point_in(P_other, S)) or P == P_other:
        raise InvalidInputError("Zwei verschiedene Punkte aus S erwartet")
    cubics = vanishing(S, 3)
    if cubics.dimension != 1:
        raise InvalidInputError(f"dim I_3(S) = {cubics.dimension}, erwartet 1")
    f = cubics.basis[0]
    rng = rng or make_rng("tenth-zero-candidates", S, P, P_other)

    first = coble_nonic([Q for Q in S if Q != P]).form
    second = coble_nonic([Q for Q in S if Q != P_other]).form
    shared = form_gcd(first, second)
    if shared.degree > 0:
        logger.warning(f"⚠️ Noniken teilen die Komponente {shared}")
        first, second = first.exquo(shared), second.exquo(shared)

    points = []
    if first.degree > 0 and second.degree > 0:
        logger.info(f"🔍 Schneide Noniken vom Restgrad {first.degree} und {second.degree}")
        solved = solve_forms([first, second], rng, real_only=True)
        points = [p for p in solved.real_points if not point_in(p, S) and not vanishes_at(f, p)]
    logger.info(f"📊 {len(points)} Kandidaten für die zehnte Nullstelle")
    return TenthZeroCandidates(
        pair=(P, P_other),
        points=points,
        shared_component=shared if shared.degree > 0 else None,
    )
