"""
SexticLab – Eliminations-Löser
==============================
Gemeinsame Nullstellen endlich vieler ternärer Formen per Resultanten.

Ablauf pro Versuch:
1. generische Projektivität T (Seed aus dem Aufrufer)
2. keine gemeinsame Nullstelle auf der neuen Geraden z = 0, konstanter
   Leitkoeffizient in y
3. y eliminieren (Resultanten), Eliminante quadratfrei machen und über Q
   faktorisieren
4. pro irreduziblem Faktor m: ggT aller Formen in K[y], K = Q[θ]/(m);
   linearer ggT liefert y ∈ K
5. Punkte mit T zurückabbilden

Schlägt ein Schritt wegen schlechter Lage fehl, wird mit einer neuen
Projektivität wiederholt (höchstens MAX_RETRIES Mal).
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from typing import Optional, Sequence

from sympy import Matrix, Poly, QQ

from sextic import config
from sextic.errors import InvalidInputError, RetryExhaustedError
from sextic.exact_arith import (
    FieldElement,
    NumberField,
    RATIONAL_FIELD,
    X,
    isolate_real_roots,
    resultant,
    unipoly,
)
from sextic.ternary_forms import (
    AlgebraicPoint,
    GENS,
    Point,
    TernaryForm,
    apply_projectivity,
    form_gcd,
    map_point,
    random_projectivity,
    simplify_point,
)

logger = logging.getLogger(__name__)

x0, x1, x2 = GENS


class _Retry(Exception):
    """Interner Signalweg: Projektivität verwerfen und neu ziehen."""


@dataclass
class SolveResult:
    """Reelle gemeinsame Nullstellen, Zahl der nicht-reellen und die benutzte Projektivität."""
    real_points: list[Point]
    nonreal_count: Optional[int]
    projectivity: Matrix
    eliminant: Poly
    attempts: int = 1
    factors: list[Poly] = field(default_factory=list)


# ---------------------------------------------------------------------------
# Polynome über K = Q[θ]/(m)
# ---------------------------------------------------------------------------

def affine_chart(f: TernaryForm) -> Poly:
    """f(x, y, 1) als Polynom in (y, x) – y ist die Eliminationsvariable."""
    return Poly(f.poly.as_expr().subs(x2, 1), x1, x0, domain=QQ)


def coefficients_in_y(g: Poly) -> dict[int, Poly]:
    """Zerlegt g(y, x) in Koeffizientenpolynome (in X) der y-Potenzen."""
    grouped: dict[int, dict] = {}
    for (ky, kx), c in g.terms():
        grouped.setdefault(ky, {})[(kx,)] = c
    return {k: Poly.from_dict(rep, X, domain=QQ) for k, rep in grouped.items()}


def specialize_x(g: Poly, K: NumberField, x_value: FieldElement) -> list[FieldElement]:
    """g(x_value, y) als Koeffizientenliste in K (aufsteigend in y)."""
    coeffs = coefficients_in_y(g)
    degree = max(coeffs) if coeffs else 0
    result = []
    for k in range(degree + 1):
        c = coeffs.get(k)
        if c is None:
            result.append(K.zero())
            continue
        value = K.zero()
        power = K.one()
        for i, a in enumerate(reversed(c.all_coeffs())):
            if a != 0:
                value = value + power * a
            power = power * x_value
        result.append(value)
    return kpoly_trim(result)


def eliminate_y(a: Poly, b: Poly) -> Poly:
    """Res_y(a, b) zweier Karten in (y, x) als Polynom in X."""
    return unipoly(resultant(a, b))


def kpoly_trim(p: list[FieldElement]) -> list[FieldElement]:
    p = list(p)
    while p and p[-1].is_zero:
        p.pop()
    return p


def kpoly_rem(a: list[FieldElement], b: list[FieldElement]) -> list[FieldElement]:
    a = kpoly_trim(a)
    b = kpoly_trim(b)
    if not b:
        raise InvalidInputError("Division durch das Nullpolynom")
    inverse_lc = b[-1].inverse()
    while len(a) >= len(b):
        factor = a[-1] * inverse_lc
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[shift + i] = a[shift + i] - factor * c
        a = kpoly_trim(a)
    return a


def kpoly_gcd(a: list[FieldElement], b: list[FieldElement]) -> list[FieldElement]:
    a, b = kpoly_trim(a), kpoly_trim(b)
    while b:
        a, b = b, kpoly_rem(a, b)
    return a


def kpoly_derivative(p: list[FieldElement]) -> list[FieldElement]:
    return kpoly_trim([c * i for i, c in enumerate(p)][1:])


# ---------------------------------------------------------------------------
# Löser
# ---------------------------------------------------------------------------

def leading_y_constant(g: TernaryForm) -> bool:
    return g.coefficient((0, g.degree, 0)) != 0


def no_common_zero_at_infinity(forms: Sequence[TernaryForm]) -> bool:
    restricted = [Poly(g.poly.as_expr().subs(x2, 0), x0, x1, domain=QQ) for g in forms]
    nonzero = [r for r in restricted if not r.is_zero]
    if not nonzero:
        return False
    common = nonzero[0]
    for r in nonzero[1:]:
        common = common.gcd(r)
    return common.is_ground


def _random_combination(forms: Sequence[TernaryForm], rng: random.Random) -> TernaryForm:
    total = TernaryForm.zero(forms[0].degree)
    for g in forms:
        total = total + g * rng.randint(1, 9) * rng.choice((1, -1))
    return total


def _eliminant(forms: Sequence[TernaryForm], rng: random.Random) -> Poly:
    degrees = {g.degree for g in forms}
    if len(forms) == 2:
        pairs = [(forms[0], forms[1])]
    elif len(degrees) == 1:
        h1, h2, h3 = (_random_combination(forms, rng) for _ in range(3))
        pairs = [(h1, h2), (h1, h3)]
    else:
        pairs = [(a, b) for i, a in enumerate(forms) for b in forms[i + 1:]]
    eliminant: Optional[Poly] = None
    for a, b in pairs:
        if not (leading_y_constant(a) and leading_y_constant(b)):
            raise _Retry("Leitkoeffizient in y verschwindet")
        r = eliminate_y(affine_chart(a), affine_chart(b))
        if r.is_zero:
            continue
        eliminant = r if eliminant is None else eliminant.gcd(r)
    if eliminant is None:
        raise _Retry("Alle Resultanten verschwinden")
    return eliminant


def _solve_factor(
    m: Poly,
    charts: Sequence[Poly],
    T: Matrix,
    real_only: bool,
) -> tuple[list[Point], int]:
    """Löst über K = Q[θ]/(m); liefert reelle Punkte und Zahl nicht-reeller Lösungen."""
    roots = isolate_real_roots(m)
    nonreal = m.degree() - len(roots)
    if real_only and not roots:
        return [], 0
    if m.degree() == 1:
        K = RATIONAL_FIELD
        theta = K.element(-m.nth(0) / m.LC())
    else:
        K = NumberField.symbolic(m)
        theta = K.generator()
    g: Optional[list[FieldElement]] = None
    for chart in charts:
        specialized = specialize_x(chart, K, theta)
        g = specialized if g is None else kpoly_gcd(g, specialized)
    if not g:
        raise _Retry("Form verschwindet auf einer senkrechten Geraden")
    if len(g) == 1:
        return [], 0
    if len(g) > 2:
        g = _sqf(g)
        if len(g) != 2:
            raise _Retry("Zwei Lösungen mit gleicher x-Koordinate")
    y = -(g[0] / g[1])
    points: list[Point] = []
    if K.is_rational:
        for root in roots:
            points.append(simplify_point(map_point(T, AlgebraicPoint.of([theta, y, K.one()], K))))
        return points, nonreal
    for root in roots:
        embedded = K.embed(root)
        coords = [embedded.element(theta.rep), embedded.element(y.rep), embedded.one()]
        points.append(simplify_point(map_point(T, AlgebraicPoint.of(coords, embedded))))
    return points, nonreal


def _sqf(p: list[FieldElement]) -> list[FieldElement]:
    """Quadratfreier Teil p / ggT(p, p') über K."""
    common = kpoly_gcd(p, kpoly_derivative(p))
    if len(common) <= 1:
        return p
    return _kpoly_exact_div(p, common)


def _kpoly_exact_div(a: list[FieldElement], b: list[FieldElement]) -> list[FieldElement]:
    a = kpoly_trim(a)
    b = kpoly_trim(b)
    K_zero = b[0] - b[0]
    quotient = [K_zero] * (len(a) - len(b) + 1)
    inverse_lc = b[-1].inverse()
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        factor = a[-1] * inverse_lc
        quotient[shift] = factor
        for i, c in enumerate(b):
            a[shift + i] = a[shift + i] - factor * c
        a = kpoly_trim(a)
    return kpoly_trim(quotient)


def solve_forms(
    forms: Sequence[TernaryForm],
    rng: random.Random,
    real_only: bool = False,
) -> SolveResult:
    """
    Gemeinsame projektive Nullstellen der Formen.

    Args:
        forms: mindestens zwei nicht-null Formen ohne gemeinsamen Faktor
        rng: Zufallsquelle für die Projektivitäten
        real_only: Faktoren ohne reelle Nullstelle überspringen
                   (nonreal_count ist dann None)

    Raises:
        InvalidInputError: gemeinsame Komponente oder zu wenige Formen
        RetryExhaustedError: keine generische Lage gefunden
    """
    forms = [g for g in forms if not g.is_zero]
    if len(forms) < 2:
        raise InvalidInputError("Mindestens zwei Formen nötig für ein endliches Nullstellengebilde")
    if any(g.degree == 0 for g in forms):
        return SolveResult([], 0, Matrix.eye(3), Poly(1, X, domain=QQ))
    common = forms[0]
    for g in forms[1:]:
        common = form_gcd(common, g)
    if common.degree > 0:
        raise InvalidInputError(f"Formen haben eine gemeinsame Komponente: {common}")

    for attempt in range(1, config.MAX_RETRIES + 1):
        T = random_projectivity(rng, attempt)
        transformed = [apply_projectivity(g, T) for g in forms]
        try:
            if not no_common_zero_at_infinity(transformed):
                raise _Retry("Gemeinsame Nullstelle auf der Geraden z = 0")
            eliminant = _eliminant(transformed, rng)
            charts = [affine_chart(g) for g in transformed]
            points: list[Point] = []
            nonreal = 0
            factors = []
            if eliminant.degree() > 0:
                factors = [m.to_field().monic() for m, _ in eliminant.sqf_part().factor_list()[1]]
            for m in factors:
                found, missing = _solve_factor(m, charts, T, real_only)
                points.extend(found)
                nonreal += missing
        except _Retry as retry:
            logger.info(f"⚠️ Versuch {attempt}: {retry} – neue Projektivität")
            continue
        logger.debug(f"✅ {len(points)} reelle Lösungen (Eliminante Grad {eliminant.degree()})")
        return SolveResult(
            real_points=points,
            nonreal_count=None if real_only else nonreal,
            projectivity=T,
            eliminant=eliminant,
            attempts=attempt,
            factors=factors,
        )
    raise RetryExhaustedError(
        f"Keine generische Projektivität nach {config.MAX_RETRIES} Versuchen"
    )
