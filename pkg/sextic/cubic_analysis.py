"""
SexticLab – Kubiken
===================
Struktur einer reduzierten ebenen Kubik X = V(f):

- Singularitäten mit lokalem Typ und Klassifikation in die vier
  zulässigen Typen (glatt, irreduzibel mit Knoten, Kegelschnitt plus
  Gerade mit zwei reellen Schnittpunkten, Dreieck)
- Tangenten, neunter Basispunkt eines Kubikbüschels, Restschnittpunkt
  einer Geraden
- exakte Vorzeichenentscheidung einer Form auf X(R) per
  Zylinderzerlegung in einer generischen Karte
- lokale Koordinaten an einem glatten Punkt (quadratische Daten und
  Potenzreihe des Zweiges)
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from functools import cmp_to_key
from typing import Callable, Iterable, Optional, Sequence

from sympy import Matrix, Poly, QQ, Rational, symbols

from sextic import config
from sextic.elimination import (
    affine_chart,
    eliminate_y,
    leading_y_constant,
    no_common_zero_at_infinity,
    solve_forms,
)
from sextic.errors import (
    InconsistencyError,
    InvalidInputError,
    RetryExhaustedError,
)
from sextic.exact_arith import (
    FieldElement,
    RealAlgebraicNumber,
    X,
    isolate_real_roots,
    rat_sign,
    sample_points,
    sign_at,
    unipoly,
)
from sextic.models import (
    CubicClassification,
    CubicType,
    CurveSign,
    LocalQuadraticData,
    NinthBasePoint,
    SingularPoint,
    SingularityType,
)
from sextic.seeding import make_rng
from sextic.ternary_forms import (
    GENS,
    Point,
    ProjectivePoint,
    TernaryForm,
    apply_projectivity,
    as_form,
    as_point,
    evaluate,
    evaluate_sign,
    form_gcd,
    gradient_at,
    hessian_matrix,
    line_coefficients,
    line_through,
    map_point,
    partials,
    point_in,
    random_projectivity,
    substitute_linear,
    vanishes_at,
)

logger = logging.getLogger(__name__)

x0, x1, x2 = GENS
U, V = symbols("U V")


# ---------------------------------------------------------------------------
# Klassifikation
# ---------------------------------------------------------------------------

def is_reduced(f: TernaryForm) -> bool:
    """Keine mehrfache Komponente (quadratfreie Zerlegung, keine Faktorisierung)."""
    _, parts = f.poly.sqf_list()
    return all(k == 1 for _, k in parts)


def _sign(value) -> int:
    if isinstance(value, FieldElement):
        return value.sign()
    return rat_sign(value)


def _is_zero(value) -> bool:
    if isinstance(value, FieldElement):
        return value.is_zero
    return value == 0


def singularity_kind(f: TernaryForm, p: Point) -> SingularityType:
    """
    Lokaler Typ eines reellen singulären Punkts aus der Hesse-Matrix H(p).

    p liegt im Kern von H(p); die Summe der 2x2-Hauptminoren ist das
    Produkt der beiden übrigen Eigenwerte und entscheidet über den Typ.
    """
    values = [[evaluate(h, p) for h in row] for row in hessian_matrix(f)]
    if all(_is_zero(v) for row in values for v in row):
        return SingularityType.HIGHER
    h = values
    e2 = (
        h[0][0] * h[1][1] - h[0][1] * h[1][0]
        + h[0][0] * h[2][2] - h[0][2] * h[2][0]
        + h[1][1] * h[2][2] - h[1][2] * h[2][1]
    )
    s = _sign(e2)
    if s < 0:
        return SingularityType.NODE
    if s > 0:
        return SingularityType.ACNODE
    return SingularityType.CUSP


def _line_probe(f: TernaryForm, nodes: Sequence[Point]) -> bool:
    """Jede Verbindungsgerade zweier rationaler Knoten muss f teilen."""
    rational = [p for p in nodes if isinstance(p, ProjectivePoint)]
    for i, p in enumerate(rational):
        for q in rational[i + 1:]:
            if not line_through(p, q).divides(f):
                return False
    return True


def classify_cubic(f, rng: Optional[random.Random] = None) -> CubicClassification:
    """
    Singularitätenzensus und Typ einer ebenen Kubik.

    Args:
        f: Kubik (TernaryForm, Text oder JSON-Dokument)
        rng: Zufallsquelle für den Eliminations-Löser; Default aus dem Digest von f

    Raises:
        InvalidInputError: Nullform oder Grad != 3
    """
    f = as_form(f)
    if f.is_zero or f.degree != 3:
        raise InvalidInputError(f"Kubik erwartet, erhalten: Grad {f.degree}")
    rng = rng or make_rng("classify", f)

    if not is_reduced(f):
        return CubicClassification(
            form=f,
            type_tag=CubicType.INADMISSIBLE_OTHER,
            inadmissible_reason="Kubik hat eine mehrfache Komponente",
        )

    derivatives = [d for d in partials(f) if not d.is_zero]
    solved = solve_forms(derivatives, rng)
    singular = [SingularPoint(point=p, kind=singularity_kind(f, p)) for p in solved.real_points]
    nonreal = solved.nonreal_count or 0

    def result(tag: CubicType, reason: Optional[str] = None) -> CubicClassification:
        logger.debug(f"🔍 Kubik {f}: {tag.value} ({len(singular)} reelle Singularitäten)")
        return CubicClassification(
            form=f,
            singular_points=singular,
            nonreal_singular_count=nonreal,
            type_tag=tag,
            inadmissible_reason=reason,
        )

    if nonreal:
        return result(CubicType.INADMISSIBLE_OTHER, f"{nonreal} nicht-reelle singuläre Punkte")
    others = [s.kind for s in singular if s.kind is not SingularityType.NODE]
    if others:
        return result(CubicType.INADMISSIBLE_OTHER, f"Singularität vom Typ {others[0].value}")

    nodes = [s.point for s in singular]
    if len(nodes) == 0:
        return result(CubicType.NONSINGULAR)
    if len(nodes) == 1:
        return result(CubicType.NODAL_IRREDUCIBLE)
    if not _line_probe(f, nodes):
        raise InconsistencyError(f"Knoten von {f} liegen nicht auf einer Geradenkomponente")
    if len(nodes) == 2:
        return result(CubicType.CONIC_PLUS_LINE)
    if len(nodes) == 3:
        return result(CubicType.TRIANGLE)
    return result(CubicType.INADMISSIBLE_OTHER, f"{len(nodes)} Knoten")


# ---------------------------------------------------------------------------
# Tangenten, neunter Basispunkt, Restschnitt
# ---------------------------------------------------------------------------

def tangent_line(f, P) -> TernaryForm:
    """
    Tangente Σ ∂f/∂x_i(P)·x_i an einem glatten rationalen Punkt.

    Raises:
        InvalidInputError: Grad != 3, P nicht auf V(f) oder P singulär
    """
    f = as_form(f)
    P = as_point(P)
    if f.degree != 3:
        raise InvalidInputError(f"Tangenten nur an Kubiken, Grad {f.degree}")
    if not isinstance(P, ProjectivePoint):
        raise InvalidInputError("Tangentenpunkt muss rational sein")
    if not vanishes_at(f, P):
        raise InvalidInputError(f"{P} liegt nicht auf V(f)")
    gradient = gradient_at(f, P)
    if all(g == 0 for g in gradient):
        raise InvalidInputError(f"{P} ist ein singulärer Punkt von V(f)")
    return TernaryForm.linear(*gradient).canonical()


def ninth_base_point(
    f,
    f_other,
    T: Sequence[ProjectivePoint],
    rng: Optional[random.Random] = None,
) -> NinthBasePoint:
    """
    Neunter Schnittpunkt zweier Kubiken durch acht bekannte Punkte.

    Resultante vom Grad 9 in einer generischen Karte, exakt durch die acht
    bekannten x-Koordinaten geteilt; der lineare Rest liefert x, der ggT der
    beiden Karten bei x liefert y. Der Punkt ist immer rational.

    Raises:
        InvalidInputError: gemeinsame Komponente, falsche Grade oder T nicht
                           auf beiden Kubiken
    """
    f, f_other = as_form(f), as_form(f_other)
    T = [as_point(P) for P in T]
    if f.degree != 3 or f_other.degree != 3:
        raise InvalidInputError("Zwei Kubiken erwartet")
    if form_gcd(f, f_other).degree > 0:
        raise InvalidInputError("Die Kubiken haben eine gemeinsame Komponente")
    if len(T) != 8 or any(point_in(P, T[:i]) for i, P in enumerate(T)):
        raise InvalidInputError("Acht verschiedene Basispunkte erwartet")
    if not all(vanishes_at(f, P) and vanishes_at(f_other, P) for P in T):
        raise InvalidInputError("Nicht alle Punkte aus T liegen auf beiden Kubiken")
    rng = rng or make_rng("ninth-base-point", f, f_other, T)

    for attempt in range(1, config.MAX_RETRIES + 1):
        M = random_projectivity(rng, attempt)
        F, G = apply_projectivity(f, M), apply_projectivity(f_other, M)
        if not (leading_y_constant(F) and leading_y_constant(G) and no_common_zero_at_infinity([F, G])):
            continue
        inverse = M.inv()
        xs = [map_point(inverse, P).coords[0] for P in T]
        if len(set(xs)) < len(xs):
            continue
        A, B = affine_chart(F), affine_chart(G)
        R = eliminate_y(A, B)
        divisor = Poly(1, X, domain=QQ)
        for x in xs:
            divisor = divisor * Poly(X - x, X, domain=QQ)
        quotient, remainder = R.div(divisor)
        if not remainder.is_zero:
            raise InconsistencyError("Resultante verschwindet nicht an allen Basispunkten")
        if quotient.degree() != 1:
            continue
        x9 = -quotient.nth(0) / quotient.LC()
        common = unipoly(A.eval(x0, x9)).gcd(unipoly(B.eval(x0, x9))).sqf_part()
        if common.degree() != 1:
            logger.info(f"⚠️ Versuch {attempt}: zwei Schnittpunkte über x = {x9}, neue Projektivität")
            continue
        y9 = -common.nth(0) / common.LC()
        point = map_point(M, ProjectivePoint.of(x9, y9, 1))
        if not (vanishes_at(f, point) and vanishes_at(f_other, point)):
            raise InconsistencyError(f"Neunter Punkt {point} liegt nicht auf beiden Kubiken")
        return NinthBasePoint(point=point, in_t=point_in(point, T))
    raise RetryExhaustedError(f"Kein generisches Koordinatensystem nach {config.MAX_RETRIES} Versuchen")


def _line_parametrization(l: TernaryForm) -> tuple[Matrix, Matrix]:
    a, b, c = line_coefficients(l)
    kernel = Matrix([[a, b, c]]).nullspace()
    if len(kernel) != 2:
        raise InvalidInputError("Nullform ist keine Gerade")
    return kernel[0], kernel[1]


def line_cubic_residual(f, l, known: Sequence[ProjectivePoint] = ()) -> ProjectivePoint:
    """
    Restschnittpunkt von l und V(f), nachdem die bekannten Schnittpunkte
    (mit Vielfachheit) abgespalten sind.

    Der Rest muss eine Potenz einer rationalen Linearform sein; sonst ist
    der Restpunkt nicht eindeutig.

    Raises:
        InvalidInputError: l teilt f, ein bekannter Punkt liegt nicht auf
                           l ∩ V(f) oder der Rest ist nicht eindeutig
    """
    f, l = as_form(f), as_form(l)
    if l.degree != 1:
        raise InvalidInputError("Gerade erwartet")
    if l.divides(f):
        raise InvalidInputError("Die Gerade ist eine Komponente von V(f)")
    A, B = _line_parametrization(l)
    s, t = symbols("s t")
    images = [Poly(s * A[i] + t * B[i], s, t, domain=QQ) for i in range(3)]
    restricted = substitute_linear(f.poly, images, (s, t))
    basis = Matrix.hstack(A, B)
    for P in known:
        P = as_point(P)
        try:
            solution, params = basis.gauss_jordan_solve(Matrix(P.coords))
        except ValueError as e:
            raise InvalidInputError(f"{P} liegt nicht auf der Geraden") from e
        sp, tp = solution.subs({p: 0 for p in params})
        factor = Poly(tp * s - sp * t, s, t, domain=QQ)
        quotient, remainder = restricted.div(factor)
        if not remainder.is_zero:
            raise InvalidInputError(f"{P} ist kein (weiterer) Schnittpunkt von Gerade und Kubik")
        restricted = quotient
    if restricted.total_degree() < 1:
        raise InvalidInputError("Kein Restschnittpunkt übrig")
    root = restricted.sqf_part()
    if root.total_degree() != 1:
        raise InvalidInputError("Restschnitt ist nicht eindeutig")
    alpha, beta = root.coeff_monomial(s), root.coeff_monomial(t)
    point = A * (-beta) + B * alpha
    return ProjectivePoint.of(*point)


# ---------------------------------------------------------------------------
# Vorzeichen auf X(R)
# ---------------------------------------------------------------------------

@dataclass
class CurveSamples:
    """Stichprobenpunkte auf X(R) in einer generischen Karte.

    slabs enthält pro rationaler Stelle x alle reellen y mit F(x, y, 1) = 0,
    at_infinity die r mit F(1, r, 0) = 0.
    """
    projectivity: Matrix
    form: TernaryForm
    chart: Poly
    slabs: list[tuple[Rational, list[RealAlgebraicNumber]]]
    at_infinity: list[RealAlgebraicNumber] = field(default_factory=list)


def merge_breakpoints(values: Iterable[RealAlgebraicNumber]) -> list[RealAlgebraicNumber]:
    """Sortiert und entfernt Duplikate; Intervalle danach paarweise disjunkt."""
    merged: list[RealAlgebraicNumber] = []
    for v in sorted(values, key=cmp_to_key(lambda u, w: u.compare(w))):
        if merged and merged[-1].compare(v) == 0:
            continue
        merged.append(v)
    result: list[RealAlgebraicNumber] = []
    for r in merged:
        while result and not result[-1].hi < r.lo:
            result[-1] = result[-1].bisect()
            r = r.bisect()
        result.append(r)
    return result


def sample_curve(
    f: TernaryForm,
    rng: random.Random,
    extra_breakpoints: Optional[Callable[[Matrix, Poly], list[RealAlgebraicNumber]]] = None,
) -> CurveSamples:
    """
    Zylinderzerlegung von X(R) für reduziertes f.

    Bruchstellen sind die reellen Nullstellen von Res_y(F, F_y) plus die
    von extra_breakpoints gelieferten x-Werte (in der transformierten Karte).

    Raises:
        RetryExhaustedError: keine Karte mit konstantem Leitkoeffizienten
    """
    for attempt in range(1, config.MAX_RETRIES + 1):
        T = random_projectivity(rng, attempt)
        F = apply_projectivity(f, T)
        if not leading_y_constant(F):
            continue
        chart = affine_chart(F)
        derivative = chart.diff(x1)
        breaks: list[RealAlgebraicNumber] = []
        if f.degree >= 2:
            discriminant = eliminate_y(chart, derivative)
            if discriminant.is_zero:
                continue
            breaks.extend(isolate_real_roots(discriminant))
        if extra_breakpoints is not None:
            breaks.extend(extra_breakpoints(T, chart))
        slabs = []
        for xs in sample_points(merge_breakpoints(breaks)):
            fiber = unipoly(chart.eval(x0, xs))
            slabs.append((xs, isolate_real_roots(fiber)))
        at_infinity = Poly(F.poly.as_expr().subs({x0: 1, x2: 0}).subs(x1, X), X, domain=QQ)
        infinity = isolate_real_roots(at_infinity) if not at_infinity.is_zero else []
        return CurveSamples(T, F, chart, slabs, infinity)
    raise RetryExhaustedError("Keine generische Karte für die Kurvenstichprobe")


def merge_signs(signs: Iterable[int]) -> CurveSign:
    """Verbandsoperation auf den beobachteten Vorzeichen."""
    seen = set(signs)
    if 1 in seen and -1 in seen:
        return CurveSign.INDEFINITE
    if 1 in seen:
        return CurveSign.NONNEGATIVE
    if -1 in seen:
        return CurveSign.NONPOSITIVE
    return CurveSign.IDENTICALLY_ZERO


def real_singular_points(f: TernaryForm, rng: random.Random) -> list[Point]:
    derivatives = [d for d in partials(f) if not d.is_zero]
    if len(derivatives) < 2:
        return []
    return solve_forms(derivatives, rng, real_only=True).real_points


def semidefinite_on_curve(f, g, rng: Optional[random.Random] = None) -> CurveSign:
    """
    Exaktes Vorzeichenmuster von g auf X(R).

    Args:
        f: reduzierte Kubik
        g: Form geraden Grades
        rng: Zufallsquelle für Karten; Default aus dem Digest von (f, g)

    Raises:
        InvalidInputError: f null oder nicht reduziert, g von ungeradem Grad
    """
    f, g = as_form(f), as_form(g)
    if f.is_zero:
        raise InvalidInputError("Kurve ist die Nullform")
    if not is_reduced(f):
        raise InvalidInputError("Kurve ist nicht reduziert")
    if g.degree % 2:
        raise InvalidInputError(f"Form geraden Grades erwartet, Grad {g.degree}")
    if g.is_zero or f.divides(g):
        return CurveSign.IDENTICALLY_ZERO
    rng = rng or make_rng("semidefinite", f, g)

    # Komponenten, auf denen g verschwindet, tragen nur das Vorzeichen 0 bei
    common = form_gcd(f, g)
    residual = f.exquo(common) if common.degree > 0 else f

    def g_breakpoints(T: Matrix, chart: Poly) -> list[RealAlgebraicNumber]:
        G = affine_chart(apply_projectivity(g, T))
        resultant = eliminate_y(chart, G)
        if resultant.is_zero:
            raise InconsistencyError("g und f haben nach Abspalten noch eine gemeinsame Komponente")
        return isolate_real_roots(resultant)

    samples = sample_curve(residual, rng, g_breakpoints)
    G_form = apply_projectivity(g, samples.projectivity)
    G = affine_chart(G_form)
    signs: list[int] = []
    for xs, ys in samples.slabs:
        fiber = unipoly(G.eval(x0, xs))
        signs.extend(sign_at(fiber, y) for y in ys)
    at_infinity = Poly(G_form.poly.as_expr().subs({x0: 1, x2: 0}).subs(x1, X), X, domain=QQ)
    signs.extend(sign_at(at_infinity, r) for r in samples.at_infinity)
    signs.extend(evaluate_sign(g, p) for p in real_singular_points(f, rng))
    verdict = merge_signs(signs)
    logger.debug(f"📊 Vorzeichen von g auf X(R): {verdict.value} ({len(signs)} Stichproben)")
    return verdict


def line_sign_at(coeffs: Sequence[FieldElement], x: Rational, y: RealAlgebraicNumber) -> int:
    """Vorzeichen von a·x + b·y + c an (x, y, 1) mit Koeffizienten in einem Zahlkörper."""
    a, b, c = coeffs
    if b.is_zero:
        return (a * x + c).sign()
    w = (-(a * x + c) / b).to_real()
    return b.sign() * y.compare(w)


def line_sign_at_infinity(coeffs: Sequence[FieldElement], r: RealAlgebraicNumber) -> int:
    """Vorzeichen von a + b·r, also der Linearform am Punkt (1 : r : 0)."""
    a, b, _ = coeffs
    if b.is_zero:
        return a.sign()
    w = (-a / b).to_real()
    return b.sign() * r.compare(w)


# ---------------------------------------------------------------------------
# Lokale Koordinaten an glatten Punkten
# ---------------------------------------------------------------------------

@dataclass
class LocalChart:
    """f und weitere Formen in lokalen Koordinaten (U, V) um P, f = U + höhere Terme."""
    point: ProjectivePoint
    f: Poly
    others: list[Poly]


def local_chart(f: TernaryForm, P: ProjectivePoint, others: Sequence[TernaryForm] = ()) -> LocalChart:
    """
    Affine Karte x_k = 1 (k letzte Koordinate != 0), Verschiebung nach P und
    lineare Koordinatenwahl mit linearem Teil von f gleich U.

    Raises:
        InvalidInputError: P nicht auf V(f) oder singulär
    """
    if not vanishes_at(f, P):
        raise InvalidInputError(f"{P} liegt nicht auf V(f)")
    k = max(i for i in range(3) if P.coords[i] != 0)
    free = [i for i in range(3) if i != k]
    images = [None, None, None]
    images[k] = Poly(1, U, V, domain=QQ)
    images[free[0]] = Poly(P.coords[free[0]] + U, U, V, domain=QQ)
    images[free[1]] = Poly(P.coords[free[1]] + V, U, V, domain=QQ)
    F = substitute_linear(f.poly, images, (U, V))
    alpha, beta = F.coeff_monomial(U), F.coeff_monomial(V)
    if alpha == 0 and beta == 0:
        raise InvalidInputError(f"{P} ist singulär auf V(f)")
    if beta != 0:
        second = [Poly(V, U, V, domain=QQ), Poly((U - alpha * V) / beta, U, V, domain=QQ)]
    else:
        second = [Poly(U / alpha, U, V, domain=QQ), Poly(V, U, V, domain=QQ)]
    F = substitute_linear(F, second, (U, V))
    rest = [
        substitute_linear(substitute_linear(g.poly, images, (U, V)), second, (U, V))
        for g in others
    ]
    return LocalChart(P, F, rest)


def local_quadratic_data(f, q, P) -> LocalQuadraticData:
    """
    Quadratischer Teil a U² + b UV + c V² von q in lokalen Koordinaten,
    in denen f = U + höhere Terme gilt.

    Raises:
        InvalidInputError: P nicht glatt auf V(f) oder q nicht doppelt null in P
    """
    f, q, P = as_form(f), as_form(q), as_point(P)
    if not isinstance(P, ProjectivePoint):
        raise InvalidInputError("Lokale Daten nur an rationalen Punkten")
    chart = local_chart(f, P, [q])
    Q = chart.others[0]
    if Q.coeff_monomial(1) != 0 or Q.coeff_monomial(U) != 0 or Q.coeff_monomial(V) != 0:
        raise InvalidInputError(f"q ist in {P} nicht singulär")
    return LocalQuadraticData(
        point=P,
        a=Rational(Q.coeff_monomial(U ** 2)),
        b=Rational(Q.coeff_monomial(U * V)),
        c=Rational(Q.coeff_monomial(V ** 2)),
    )


def threshold_from_local_data(a, b, c) -> Rational:
    """Kleinstes t, für das (a + t)U² + bUV + cV² psd ist: b²/(4c) − a.

    Raises:
        InvalidInputError: c <= 0
    """
    a, b, c = Rational(a), Rational(b), Rational(c)
    if c <= 0:
        raise InvalidInputError(f"c > 0 erwartet, erhalten {c}")
    return b ** 2 / (4 * c) - a


def truncate(p: Poly, order: int) -> Poly:
    """Terme vom Gesamtgrad <= order."""
    kept = {e: c for e, c in p.terms() if sum(e) <= order}
    return Poly.from_dict(kept, *p.gens, domain=QQ) if kept else Poly(0, *p.gens, domain=QQ)


def branch_expansion(chart: LocalChart, order: int = 4) -> Poly:
    """
    Potenzreihe U = φ(V) des Zweiges von f durch den Ursprung bis zur
    Ordnung order (Fixpunktiteration U ↦ U − F(U, V)).
    """
    F = chart.f
    phi = Poly(0, U, V, domain=QQ)
    identity_v = Poly(V, U, V, domain=QQ)
    for _ in range(order):
        composed = substitute_linear(F, [phi, identity_v], (U, V))
        phi = truncate(phi - composed, order)
    return Poly(phi.as_expr(), V, domain=QQ)


def restrict_to_branch(g: Poly, phi: Poly, order: int) -> Poly:
    """g(φ(V), V) bis zur Ordnung order, als Polynom in V."""
    phi_uv = Poly(phi.as_expr(), U, V, domain=QQ)
    composed = substitute_linear(g, [phi_uv, Poly(V, U, V, domain=QQ)], (U, V))
    return Poly(truncate(composed, order).as_expr(), V, domain=QQ)
