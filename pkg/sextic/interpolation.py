"""
SexticLab – Interpolation
=========================
Lineare Systeme I_d(mS): Formen vom Grad d mit Multiplizität >= m in jedem
Punkt von S (m ∈ {1, 2}), exakt als Kern der Bedingungsmatrix.

Die Basis ist die reduzierte Zeilenstufenform des Kerns – damit ist sie
unabhängig von der Reihenfolge der Punkte und reproduzierbar.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from sympy import Matrix, Rational

from sextic.errors import InvalidInputError, NotAdmissibleError
from sextic.ternary_forms import (
    ProjectivePoint,
    TernaryForm,
    collinear,
    form_gcd,
    gradient_at,
    monomials,
)

logger = logging.getLogger(__name__)

Constraint = tuple[ProjectivePoint, int]


@dataclass(frozen=True)
class LinearSystemBasis:
    """Basis von I_d(mS) zusammen mit den Bedingungen, aus denen sie stammt."""
    degree: int
    constraints: tuple[Constraint, ...]
    basis: tuple[TernaryForm, ...]
    rank: int

    @property
    def dimension(self) -> int:
        return len(self.basis)


# ---------------------------------------------------------------------------
# Bedingungsmatrix
# ---------------------------------------------------------------------------

def _monomial_value(e: Sequence[int], p: Sequence[Rational]) -> Rational:
    value = Rational(1)
    for k, c in zip(e, p):
        if k:
            value *= c ** k
    return value


def _partial_row(mons, p, i: int) -> list[Rational]:
    row = []
    for e in mons:
        if e[i] == 0:
            row.append(Rational(0))
            continue
        lowered = list(e)
        lowered[i] -= 1
        row.append(e[i] * _monomial_value(lowered, p))
    return row


def constraint_rows(degree: int, constraints: Sequence[Constraint]) -> list[list[Rational]]:
    """Wertzeile für m = 1; Wert plus drei partielle Ableitungen für m = 2."""
    mons = monomials(degree)
    rows: list[list[Rational]] = []
    for point, multiplicity in constraints:
        p = point.coords
        rows.append([_monomial_value(e, p) for e in mons])
        if multiplicity == 2:
            rows.extend(_partial_row(mons, p, i) for i in range(3))
    return rows


def form_from_vector(vector, degree: int) -> TernaryForm:
    return TernaryForm.from_terms(dict(zip(monomials(degree), vector)), degree)


def form_vector(f: TernaryForm, degree: int) -> list[Rational]:
    return [f.coefficient(e) for e in monomials(degree)]


def _validate_constraints(degree: int, constraints: Sequence[Constraint]) -> list[Constraint]:
    if degree < 1:
        raise InvalidInputError(f"Grad >= 1 erwartet, erhalten: {degree}")
    seen: list[ProjectivePoint] = []
    checked = []
    for point, multiplicity in constraints:
        if multiplicity not in (1, 2):
            raise InvalidInputError(f"Multiplizität {multiplicity} nicht unterstützt (nur 1 oder 2)")
        if not isinstance(point, ProjectivePoint):
            point = ProjectivePoint.of(*point)
        if point in seen:
            raise InvalidInputError(f"Punkt {point} kommt doppelt vor")
        seen.append(point)
        checked.append((point, multiplicity))
    return checked


def linear_system(degree: int, constraints: Sequence[Constraint]) -> LinearSystemBasis:
    """
    Basis von I_d(mS).

    Args:
        degree: Grad d >= 1
        constraints: Liste von (Punkt, Multiplizität ∈ {1, 2})

    Raises:
        InvalidInputError: doppelte Punkte, Grad < 1 oder Multiplizität > 2
    """
    constraints = _validate_constraints(degree, constraints)
    mons = monomials(degree)
    rows = constraint_rows(degree, constraints)
    if not rows:
        basis = tuple(form_from_vector([1 if j == i else 0 for j in range(len(mons))], degree) for i in range(len(mons)))
        return LinearSystemBasis(degree, tuple(constraints), basis, 0)
    matrix = Matrix(rows)
    kernel = matrix.nullspace()
    rank = len(mons) - len(kernel)
    if kernel:
        echelon, _ = Matrix.hstack(*kernel).T.rref()
        vectors = [echelon.row(i) for i in range(echelon.rows) if any(v != 0 for v in echelon.row(i))]
    else:
        vectors = []
    basis = tuple(form_from_vector(list(v), degree) for v in vectors)
    logger.debug(f"📊 I_{degree}: {len(rows)} Bedingungen, Dimension {len(basis)}")
    return LinearSystemBasis(degree, tuple(constraints), basis, rank)


def vanishing(points: Sequence[ProjectivePoint], degree: int = 3) -> LinearSystemBasis:
    return linear_system(degree, [(p, 1) for p in points])


def singular_at(points: Sequence[ProjectivePoint], degree: int = 6) -> LinearSystemBasis:
    return linear_system(degree, [(p, 2) for p in points])


# ---------------------------------------------------------------------------
# Spann-Tests
# ---------------------------------------------------------------------------

def span_rank(forms: Sequence[TernaryForm]) -> int:
    forms = [f for f in forms if not f.is_zero]
    if not forms:
        return 0
    degree = forms[0].degree
    return Matrix([form_vector(f, degree) for f in forms]).rank()


def in_span(f: TernaryForm, forms: Sequence[TernaryForm]) -> bool:
    """Exakter linearer Zugehörigkeitstest f ∈ span(forms)."""
    if f.is_zero:
        return True
    forms = [g for g in forms if not g.is_zero]
    if not forms:
        return False
    return span_rank(forms + [f]) == span_rank(forms)


def products(basis: Sequence[TernaryForm]) -> list[TernaryForm]:
    """Alle Produkte b_i·b_j (i <= j) – erzeugen den Raum I_d(S)²."""
    return [a * b for i, a in enumerate(basis) for b in basis[i:]]


def sos_membership(points: Sequence[ProjectivePoint], g: TernaryForm) -> bool:
    """g ∈ span I_3(points)²."""
    cubics = vanishing(points, 3).basis
    return in_span(g, products(cubics))


def eight_point_cone_dimensions(T: Sequence[ProjectivePoint]) -> tuple[int, int]:
    """(dim I_6(2T), dim span I_3(T)²) – für acht Punkte in allgemeiner Lage (4, 3)."""
    sextics = singular_at(T, 6)
    cubics = vanishing(T, 3)
    return sextics.dimension, span_rank(products(cubics.basis))


def check_general_position(T: Sequence[ProjectivePoint]) -> None:
    """
    Keine 4 Punkte kollinear, keine 7 auf einem Kegelschnitt.

    Raises:
        InvalidInputError: bei Verletzung
    """
    for quadruple in combinations(T, 4):
        if collinear(quadruple):
            raise InvalidInputError(f"Vier Punkte auf einer Geraden: {list(quadruple)}")
    if len(T) >= 7:
        for septuple in combinations(T, 7):
            if vanishing(septuple, 2).dimension > 0:
                raise InvalidInputError(f"Sieben Punkte auf einem Kegelschnitt: {list(septuple)}")


# ---------------------------------------------------------------------------
# Bleistift der Sextiken
# ---------------------------------------------------------------------------

def lex_leading_monomial(f: TernaryForm) -> tuple[int, int, int]:
    for e in monomials(f.degree):
        if f.coefficient(e) != 0:
            return e
    raise InvalidInputError("Nullform hat kein Leitmonom")


def pencil_second_generator(S: Sequence[ProjectivePoint], f: TernaryForm) -> TernaryForm:
    """
    Zweiter Erzeuger q von I_6(2S) neben f², reduziert modulo f² und kanonisch normiert.

    Raises:
        NotAdmissibleError: dim I_6(2S) != 2 oder ggT(f, q) != 1
    """
    system = singular_at(S, 6)
    if system.dimension != 2:
        raise NotAdmissibleError(f"dim I_6(2S) = {system.dimension}, erwartet 2")
    square = f ** 2
    candidates = [b for b in system.basis if not in_span(b, [square])]
    if not candidates or not in_span(square, system.basis):
        raise NotAdmissibleError("f² liegt nicht im Bleistift I_6(2S)")
    b = candidates[0]
    e = lex_leading_monomial(square)
    q = (b - square * (b.coefficient(e) / square.coefficient(e))).canonical()
    if form_gcd(f, q).degree > 0:
        raise NotAdmissibleError("q und f haben eine gemeinsame Komponente")
    return q


def pencil_coordinates(g: TernaryForm, f: TernaryForm, q: TernaryForm) -> tuple[Rational, Rational]:
    """
    (a, c) mit g = a·q + c·f².

    Raises:
        InvalidInputError: g liegt nicht im Bleistift span(f², q)
    """
    square = f ** 2
    if g.degree != square.degree or not in_span(g, [q, square]):
        raise InvalidInputError(f"{g} liegt nicht im Bleistift span(f², q)")
    system = Matrix.hstack(Matrix(form_vector(q, square.degree)), Matrix(form_vector(square, square.degree)))
    solution, _ = system.gauss_jordan_solve(Matrix(form_vector(g, square.degree)))
    a, c = (Rational(v) for v in solution)
    return a, c


def reference_generator(g: TernaryForm, f: TernaryForm, q: TernaryForm) -> TernaryForm:
    """
    Übernimmt g als Erzeuger des Bleistifts; s bezieht sich danach auf g.

    Das Vorzeichen folgt q, also g >= 0 auf X(R).

    Raises:
        InvalidInputError: g nicht im Bleistift oder ein Vielfaches von f²
    """
    a, c = pencil_coordinates(g, f, q)
    if a == 0:
        raise InvalidInputError("Erzeuger ist ein Vielfaches von f²")
    logger.info(f"🔄 Referenz-Erzeuger übernommen: g = {a}·q + {c}·f²")
    return g if a > 0 else -g


# ---------------------------------------------------------------------------
# Singularisieren
# ---------------------------------------------------------------------------

def singularize(f: TernaryForm, g: TernaryForm, T: Sequence[ProjectivePoint]) -> TernaryForm:
    """
    Liefert g + p·f mit einer Kubik p, singulär in allen Punkten von T.

    Voraussetzung: f(P) = g(P) = 0 und die Schnittmultiplizität von f und g
    in P ist >= 2; dann ist ∇g(P) ein Vielfaches von ∇f(P).

    Raises:
        InvalidInputError: wenn das lineare System unlösbar ist
    """
    mons = monomials(3)
    rows, rhs = [], []
    for P in T:
        grad_f = gradient_at(f, P)
        grad_g = gradient_at(g, P)
        values = [_monomial_value(e, P.coords) for e in mons]
        for i in range(3):
            rows.append([v * grad_f[i] for v in values])
            rhs.append(-grad_g[i])
    try:
        solution, params = Matrix(rows).gauss_jordan_solve(Matrix(rhs))
    except ValueError as e:
        raise InvalidInputError("g lässt sich nicht durch Addition von p·f singularisieren") from e
    solution = solution.subs({t: 0 for t in params})
    p = form_from_vector(list(solution), 3)
    return g + p * f
