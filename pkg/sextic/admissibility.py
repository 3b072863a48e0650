"""
SexticLab – Zulässigkeit
========================
Entscheidung, ob neun Punkte zulässig sind, plus die geometrischen
Gegenproben:

- Tangentenkriterium für irreduzible Kubiken (M ≠ P, t_M ∩ t_P auf X,
  t_M·t_P semidefinit auf X(R))
- Produktkriterium für Punkte auf einem Dreieck
- Konstruktion des neunten Punktes zu acht gegebenen Punkten
- Copacetic-Test für acht Punkte

Die eigentliche Entscheidung läuft als LangGraph-Pipeline (graph.py).
"""

from __future__ import annotations

import logging
import random
from typing import Optional, Sequence

from sympy import Matrix, Rational

from sextic.cubic_analysis import (
    classify_cubic,
    line_cubic_residual,
    line_sign_at,
    line_sign_at_infinity,
    merge_signs,
    ninth_base_point,
    real_singular_points,
    sample_curve,
    semidefinite_on_curve,
    tangent_line,
)
from sextic.errors import InvalidInputError, UnsupportedCaseError
from sextic.elimination import solve_forms
from sextic.exact_arith import RATIONAL_FIELD, FieldElement, RealAlgebraicNumber
from sextic.graph import check_admissible
from sextic.interpolation import check_general_position, vanishing
from sextic.models import (
    CubicClassification,
    CubicType,
    CurveSign,
    EightPointOutcome,
)
from sextic.seeding import make_rng
from sextic.ternary_forms import (
    Point,
    ProjectivePoint,
    TernaryForm,
    as_form,
    as_point,
    gradient_at,
    is_singular_at,
    line_coefficients,
    line_intersection,
    line_through,
    map_point,
    partials,
    point_in,
    same_point,
    simplify_point,
    vanishes_at,
)

__all__ = [
    "check_admissible",
    "tangent_criterion",
    "triangle_parameters",
    "triangle_criterion",
    "triangle_collinear",
    "default_pencil_cubic",
    "ninth_point_for_eight",
    "is_copacetic",
]

logger = logging.getLogger(__name__)

IRREDUCIBLE_TYPES = (CubicType.NONSINGULAR, CubicType.NODAL_IRREDUCIBLE)


# ---------------------------------------------------------------------------
# Helpers
# ---------------------------------------------------------------------------

def rational_point_set(points, expected: Optional[int] = None) -> list[ProjectivePoint]:
    result = [as_point(p) for p in points]
    if not all(isinstance(p, ProjectivePoint) for p in result):
        raise InvalidInputError("Nur rationale Punkte werden unterstützt")
    if expected is not None and len(result) != expected:
        raise InvalidInputError(f"{expected} Punkte erwartet, erhalten: {len(result)}")
    for i, P in enumerate(result):
        if point_in(P, result[:i]):
            raise InvalidInputError(f"Punkt {P} kommt doppelt vor")
    return result


def second_generator(basis: Sequence[TernaryForm], f: TernaryForm) -> TernaryForm:
    for b in basis:
        if not b.proportional(f):
            return b
    raise InvalidInputError("Büschel hat keinen zweiten Erzeuger")


# ---------------------------------------------------------------------------
# Tangentenkriterium
# ---------------------------------------------------------------------------

def tangent_criterion(S, P, rng: Optional[random.Random] = None) -> bool:
    """
    Geometrische Gegenprobe zur Zulässigkeit für irreduzibles X.

    Mit T = S∖{P} und M dem neunten Basispunkt von I_3(T): zulässig genau
    dann, wenn M ≠ P, t_M und t_P sich auf X schneiden und t_M·t_P auf
    X(R) semidefinit ist.

    Raises:
        InvalidInputError: dim I_3(S) != 1 oder P nicht in S
        UnsupportedCaseError: X ist reduzibel oder M singulär auf X
    """
    S = rational_point_set(S, 9)
    P = as_point(P)
    if not point_in(P, S):
        raise InvalidInputError(f"{P} liegt nicht in S")
    cubics = vanishing(S, 3)
    if cubics.dimension != 1:
        raise InvalidInputError(f"dim I_3(S) = {cubics.dimension}, erwartet 1")
    f = cubics.basis[0].canonical()
    rng = rng or make_rng("tangent-criterion", S, P)
    cubic = classify_cubic(f, rng)
    if cubic.type_tag not in IRREDUCIBLE_TYPES:
        raise UnsupportedCaseError(f"Tangentenkriterium nur für irreduzible Kubiken, Typ {cubic.type_tag.value}")
    if is_singular_at(f, P):
        logger.info(f"⚠️ {P} ist singulär auf X")
        return False

    T = [Q for Q in S if not same_point(Q, P)]
    pencil = vanishing(T, 3)
    M = ninth_base_point(f, second_generator(pencil.basis, f), T, rng).point
    if same_point(M, P):
        logger.info("⚠️ Neunter Basispunkt M fällt mit P zusammen")
        return False
    if is_singular_at(f, M):
        raise UnsupportedCaseError(f"Neunter Basispunkt {M} ist singulär auf X")

    t_M, t_P = tangent_line(f, M), tangent_line(f, P)
    meet = line_intersection(t_M, t_P)
    if not vanishes_at(f, meet):
        logger.info(f"⚠️ Tangenten schneiden sich in {meet} ausserhalb von X")
        return False
    sign = semidefinite_on_curve(f, t_M * t_P, rng)
    logger.debug(f"🔍 t_M·t_P auf X(R): {sign.value}")
    return sign is not CurveSign.INDEFINITE


# ---------------------------------------------------------------------------
# Dreiecke
# ---------------------------------------------------------------------------

def _triangle_matrix(triangle: Optional[Sequence] = None) -> Matrix:
    if triangle is None:
        return Matrix.eye(3)
    lines = [as_form(l) for l in triangle]
    if len(lines) != 3:
        raise InvalidInputError("Ein Dreieck besteht aus drei Geraden")
    m = Matrix([list(line_coefficients(l)) for l in lines])
    if m.det() == 0:
        raise InvalidInputError("Die drei Geraden bilden kein Dreieck")
    return m


def triangle_parameters(points, triangle: Optional[Sequence] = None) -> list[tuple[int, Rational]]:
    """
    Seite und Parameter jedes Punktes bezüglich des Dreiecks l0·l1·l2.

    Mit y = (l0(x), l1(x), l2(x)) ist P_0(a) = (0:a:1), P_1(a) = (1:0:a),
    P_2(a) = (a:1:0).

    Raises:
        InvalidInputError: Punkt in einer Ecke oder auf keiner Seite
    """
    m = _triangle_matrix(triangle)
    result = []
    for P in points:
        P = as_point(P)
        if not isinstance(P, ProjectivePoint):
            raise InvalidInputError("Dreiecksparameter nur für rationale Punkte")
        y = list(m * Matrix(P.coords))
        sides = [i for i in range(3) if y[i] == 0]
        if len(sides) > 1:
            raise InvalidInputError(f"{P} liegt in einer Ecke des Dreiecks")
        if not sides:
            raise InvalidInputError(f"{P} liegt auf keiner Seite des Dreiecks")
        i = sides[0]
        numerator, denominator = y[(i + 1) % 3], y[(i + 2) % 3]
        result.append((i, Rational(numerator / denominator)))
    return result


def triangle_point(side: int, a, triangle: Optional[Sequence] = None) -> ProjectivePoint:
    """Der Punkt P_side(a) in Originalkoordinaten."""
    a = Rational(a)
    if a == 0:
        raise InvalidInputError("Parameter 0 ist eine Ecke")
    y = [Rational(0)] * 3
    y[(side + 1) % 3] = a
    y[(side + 2) % 3] = Rational(1)
    return ProjectivePoint.of(*(_triangle_matrix(triangle).inv() * Matrix(y)))


def triangle_criterion(S, triangle: Optional[Sequence] = None) -> bool:
    """
    Produktkriterium: drei verschiedene Parameter pro Seite und Produkt
    aller neun Parameter gleich 1.

    Raises:
        InvalidInputError: Punkt in einer Ecke, nicht drei Punkte pro Seite
                           oder wiederholte Parameter
    """
    S = [as_point(p) for p in S]
    if len(S) != 9:
        raise InvalidInputError(f"Neun Punkte erwartet, erhalten: {len(S)}")
    parameters = triangle_parameters(S, triangle)
    product = Rational(1)
    for side in range(3):
        values = [a for i, a in parameters if i == side]
        if len(values) != 3:
            raise InvalidInputError(f"Seite {side} trägt {len(values)} statt 3 Punkte")
        if len(set(values)) != 3:
            raise InvalidInputError(f"Wiederholte Parameter auf Seite {side}: {values}")
        for a in values:
            product *= a
    logger.debug(f"📊 Produkt der Dreiecksparameter: {product}")
    return product == 1


def triangle_collinear(points, triangle: Optional[Sequence] = None) -> bool:
    """Drei Punkte, je einer pro Seite, sind kollinear genau dann, wenn a0·a1·a2 = −1."""
    parameters = triangle_parameters(points, triangle)
    if sorted(i for i, _ in parameters) != [0, 1, 2]:
        raise InvalidInputError("Je ein Punkt pro Seite erwartet")
    product = Rational(1)
    for _, a in parameters:
        product *= a
    return product == -1


# ---------------------------------------------------------------------------
# Neunter Punkt zu acht Punkten
# ---------------------------------------------------------------------------

def _pencil_members(basis: Sequence[TernaryForm]) -> list[TernaryForm]:
    a, b = basis
    members = [a, b]
    for k in (1, -1, 2, -2, 3, -3, 4, -4, 5, -5):
        members.append(a + b * k)
        members.append(a * k + b)
    return members


def default_pencil_cubic(T, rng: Optional[random.Random] = None) -> CubicClassification:
    """
    Erstes glattes Mitglied von I_3(T) in fester Reihenfolge der
    Kombinationen; ohne glattes Mitglied das erste zulässige, sonst das
    erste überhaupt.
    """
    T = rational_point_set(T, 8)
    basis = vanishing(T, 3).basis
    if len(basis) != 2:
        raise InvalidInputError(f"dim I_3(T) = {len(basis)}, erwartet 2")
    rng = rng or make_rng("pencil-member", T)
    fallback: Optional[CubicClassification] = None
    first: Optional[CubicClassification] = None
    for member in _pencil_members(basis):
        cubic = classify_cubic(member.canonical(), rng)
        if cubic.type_tag is CubicType.NONSINGULAR:
            return cubic
        first = first or cubic
        if fallback is None and cubic.type_tag.admissible:
            fallback = cubic
    return fallback or first


def _line_coeffs_in_chart(coeffs: Sequence[FieldElement], T: Matrix) -> list[FieldElement]:
    """Koeffizienten von l(T·x) für eine Linearform l mit Koeffizienten in einem Zahlkörper."""
    return [sum((coeffs[i] * T[i, j] for i in range(3)), coeffs[0] - coeffs[0]) for j in range(3)]


def _chart_x(T: Matrix, p: Point) -> Optional[RealAlgebraicNumber]:
    image = map_point(T.inv(), p)
    if isinstance(image, ProjectivePoint):
        if image.coords[2] == 0:
            return None
        return RealAlgebraicNumber.from_rational(image.coords[0] / image.coords[2])
    if image.coords[2].is_zero:
        return None
    return (image.coords[0] / image.coords[2]).to_real()


def _product_sign_on_curve(
    f: TernaryForm,
    lines: Sequence[Sequence[FieldElement]],
    touch_points: Sequence[Point],
    rng: random.Random,
) -> CurveSign:
    """Vorzeichenmuster eines Produkts von Linearformen auf X(R)."""

    def extra(T: Matrix, chart) -> list[RealAlgebraicNumber]:
        values = [_chart_x(T, p) for p in touch_points]
        return [v for v in values if v is not None]

    samples = sample_curve(f, rng, extra)
    T = samples.projectivity
    transformed = [_line_coeffs_in_chart(c, T) for c in lines]
    signs: list[int] = []
    for xs, ys in samples.slabs:
        for y in ys:
            sign = 1
            for c in transformed:
                sign *= line_sign_at(c, xs, y)
            signs.append(sign)
    for r in samples.at_infinity:
        sign = 1
        for c in transformed:
            sign *= line_sign_at_infinity(c, r)
        signs.append(sign)
    for p in real_singular_points(f, rng):
        sign = 1
        for c in lines:
            coords = p.field_coords() if isinstance(p, ProjectivePoint) else p.coords
            value = sum((a * b for a, b in zip(c, coords)), c[0] - c[0])
            sign *= value.sign()
        signs.append(sign)
    return merge_signs(signs)


def _tangent_coeffs(f: TernaryForm, R: Point) -> list[FieldElement]:
    gradient = gradient_at(f, R)
    field = RATIONAL_FIELD if isinstance(R, ProjectivePoint) else R.field
    return [g if isinstance(g, FieldElement) else field.element(g) for g in gradient]


def _tangent_construction(
    T: list[ProjectivePoint],
    cubic: CubicClassification,
    other: TernaryForm,
    rng: random.Random,
) -> EightPointOutcome:
    f = cubic.form
    M = ninth_base_point(f, other, T, rng).point

    def outcome(**fields) -> EightPointOutcome:
        return EightPointOutcome(cubic=f, cubic_type=cubic.type_tag, ninth_base_point=M, **fields)

    if is_singular_at(f, M):
        return outcome(found=False, reason=f"Neunter Basispunkt {M} ist singulär auf X")
    t_M = tangent_line(f, M)
    N = line_cubic_residual(f, t_M, [M, M])
    if same_point(N, M):
        raise UnsupportedCaseError(f"M = {M} ist ein Wendepunkt von X")
    if is_singular_at(f, N):
        return outcome(found=False, residual_point=N, reason=f"Restpunkt {N} ist singulär auf X")

    polar = sum((d * c for d, c in zip(partials(f), N.coords)), TernaryForm.zero(2))
    solved = solve_forms([f, polar], rng, real_only=True)
    excluded = [M, N] + [s.point for s in cubic.singular_points]
    candidates = [simplify_point(R) for R in solved.real_points if not point_in(R, excluded)]
    logger.info(f"🔍 {len(candidates)} reelle Tangenten von {N} an X (neben t_M)")

    m_coeffs = [RATIONAL_FIELD.element(c) for c in line_coefficients(t_M)]
    chosen = []
    for R in candidates:
        sign = _product_sign_on_curve(f, [m_coeffs, _tangent_coeffs(f, R)], [M, N, R], rng)
        logger.debug(f"📊 t_M·t_R für R = {R}: {sign.value}")
        if sign in (CurveSign.NONNEGATIVE, CurveSign.NONPOSITIVE):
            chosen.append(R)
    if not chosen:
        return outcome(found=False, residual_point=N, reason="Keine semidefinite Tangente durch N")
    if len(chosen) > 1:
        logger.warning(f"⚠️ {len(chosen)} semidefinite Tangenten, nehme die erste")
    Q = chosen[0]
    in_t = point_in(Q, T)
    logger.info(f"✅ Neunter Punkt Q = {Q}{' (liegt in T)' if in_t else ''}")
    return outcome(found=True, point=Q, in_t=in_t, residual_point=N)


def _triangle_construction(T: list[ProjectivePoint], cubic: CubicClassification) -> EightPointOutcome:
    f = cubic.form

    def outcome(**fields) -> EightPointOutcome:
        return EightPointOutcome(cubic=f, cubic_type=cubic.type_tag, **fields)

    vertices = [s.point for s in cubic.singular_points]
    triangle = [line_through(vertices[1], vertices[2]), line_through(vertices[2], vertices[0]),
                line_through(vertices[0], vertices[1])]
    if any(point_in(P, vertices) for P in T):
        return outcome(found=False, reason="Ein Punkt von T ist eine Ecke des Dreiecks")
    parameters = triangle_parameters(T, triangle)
    counts = [sum(1 for i, _ in parameters if i == side) for side in range(3)]
    if sorted(counts) != [2, 3, 3]:
        return outcome(found=False, reason=f"Verteilung {counts} auf den Seiten statt 3, 3, 2")
    side = counts.index(2)
    product = Rational(1)
    for _, a in parameters:
        product *= a
    Q = triangle_point(side, 1 / product, triangle)
    in_t = point_in(Q, T)
    logger.info(f"✅ Neunter Punkt auf dem Dreieck: {Q}")
    return outcome(found=True, point=Q, in_t=in_t)


def ninth_point_for_eight(T, cubic=None, rng: Optional[random.Random] = None) -> EightPointOutcome:
    """
    Der einzige Punkt Q auf X(R), für den T ∪ {Q} zulässig sein kann.

    Glatte oder nodale X: M neunter Basispunkt, N dritter Schnittpunkt von
    t_M mit X, Q Berührpunkt der Tangente t ≠ t_M durch N mit t_M·t
    semidefinit auf X(R). Dreiecke: Q auf der Seite mit zwei Punkten, mit
    Parameter 1/∏(übrige acht Parameter).

    Args:
        T: acht rationale Punkte, keine 4 kollinear, keine 7 auf einem Kegelschnitt
        cubic: Mitglied des Büschels; Default ist das erste glatte Mitglied
        rng: Zufallsquelle; Default aus dem Digest von T

    Raises:
        InvalidInputError: Lageverletzung, dim I_3(T) != 2 oder cubic nicht im Büschel
        UnsupportedCaseError: M ist ein Wendepunkt (N = M)
    """
    T = rational_point_set(T, 8)
    check_general_position(T)
    pencil = vanishing(T, 3)
    if pencil.dimension != 2:
        raise InvalidInputError(f"dim I_3(T) = {pencil.dimension}, erwartet 2")
    rng = rng or make_rng("ninth-point", T)
    if cubic is None:
        classification = default_pencil_cubic(T, rng)
    else:
        f = as_form(cubic)
        if f.degree != 3 or not all(vanishes_at(f, P) for P in T):
            raise InvalidInputError("Die Kubik liegt nicht im Büschel I_3(T)")
        classification = classify_cubic(f.canonical(), rng)
    f = classification.form
    logger.info(f"🔍 Neunter Punkt auf {f} ({classification.type_tag.value})")

    if classification.type_tag in IRREDUCIBLE_TYPES:
        return _tangent_construction(T, classification, second_generator(pencil.basis, f), rng)
    if classification.type_tag is CubicType.TRIANGLE:
        return _triangle_construction(T, classification)
    return EightPointOutcome(
        found=False,
        cubic=f,
        cubic_type=classification.type_tag,
        reason=f"Kubiktyp {classification.type_tag.value} lässt keinen Kandidaten zu",
    )


def is_copacetic(T) -> bool:
    """Der neunte Basispunkt von I_3(T) liegt nicht in T."""
    T = rational_point_set(T, 8)
    pencil = vanishing(T, 3)
    if pencil.dimension != 2:
        raise InvalidInputError(f"dim I_3(T) = {pencil.dimension}, erwartet 2")
    a, b = pencil.basis
    return not ninth_base_point(a, b, T).in_t
