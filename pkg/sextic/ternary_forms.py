"""
SexticLab – Ternäre Formen
==========================
Homogene Polynome in x0, x1, x2 mit rationalen Koeffizienten, projektive
Punkte (rational oder mit Koordinaten in einem Zahlkörper) und die
Grundoperationen darauf: Auswertung, Ableitungen, Jacobi-Determinante,
Koordinatenwechsel, ggT und kanonische Normierung.

Textformat:  "3/2*x0^2*x1 - x2^3"  (x, y, z sind Aliase für x0, x1, x2)
JSON-Format: {"degree": d, "terms": [{"e": [i, j, k], "c": "p/q"}, ...]}
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

from sympy import Matrix, Poly, QQ, Rational, symbols
from sympy.parsing.sympy_parser import (
    convert_xor,
    implicit_multiplication,
    parse_expr,
    standard_transformations,
)

from sextic.errors import InvalidInputError
from sextic.exact_arith import (
    FieldElement,
    NumberField,
    RATIONAL_FIELD,
    RealAlgebraicNumber,
    field_of,
    rat_sign,
    rational_str,
    to_rational,
)

logger = logging.getLogger(__name__)

x0, x1, x2 = symbols("x0 x1 x2")
GENS = (x0, x1, x2)

_PARSE_TRANSFORMS = standard_transformations + (implicit_multiplication, convert_xor)
_PARSE_LOCALS = {"x0": x0, "x1": x1, "x2": x2, "x": x0, "y": x1, "z": x2}


def _poly(expr_or_number) -> Poly:
    return Poly(expr_or_number, *GENS, domain=QQ)


# ---------------------------------------------------------------------------
# TernaryForm
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class TernaryForm:
    """Homogene Form vom Grad degree; die Nullform hat keine Terme."""
    poly: Poly
    degree: int

    # -- Konstruktion -----------------------------------------------------

    @classmethod
    def from_poly(cls, poly: Poly, degree: Optional[int] = None) -> "TernaryForm":
        poly = Poly(poly.as_expr(), *GENS, domain=QQ) if poly.gens != GENS or poly.domain != QQ else poly
        if poly.is_zero:
            return cls(poly, degree if degree is not None else 0)
        if not poly.is_homogeneous:
            raise InvalidInputError(f"Form ist nicht homogen: {poly.as_expr()}")
        d = poly.total_degree()
        if degree is not None and degree != d:
            raise InvalidInputError(f"Grad {d} erwartet {degree}")
        return cls(poly, d)

    @classmethod
    def from_expr(cls, expr, degree: Optional[int] = None) -> "TernaryForm":
        return cls.from_poly(_poly(expr), degree)

    @classmethod
    def from_terms(cls, terms: dict, degree: int) -> "TernaryForm":
        rep = {}
        for e, c in terms.items():
            e = tuple(int(v) for v in e)
            if len(e) != 3 or sum(e) != degree or min(e) < 0:
                raise InvalidInputError(f"Exponent {e} passt nicht zu Grad {degree}")
            c = to_rational(c)
            if c != 0:
                rep[e] = rep.get(e, Rational(0)) + c
        poly = Poly.from_dict(rep, *GENS, domain=QQ) if rep else _poly(0)
        return cls(poly, degree)

    @classmethod
    def zero(cls, degree: int) -> "TernaryForm":
        return cls(_poly(0), degree)

    @classmethod
    def linear(cls, a, b, c) -> "TernaryForm":
        return cls.from_expr(to_rational(a) * x0 + to_rational(b) * x1 + to_rational(c) * x2, 1)

    # -- Eigenschaften ----------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.poly.is_zero

    def terms(self) -> dict[tuple[int, int, int], Rational]:
        return {tuple(e): Rational(c) for e, c in self.poly.terms() if c != 0}

    def coefficient(self, e: Sequence[int]) -> Rational:
        return Rational(self.poly.nth(*e))

    def expr(self):
        return self.poly.as_expr()

    # -- Arithmetik -------------------------------------------------------

    def _check_same_degree(self, other: "TernaryForm") -> int:
        if self.is_zero:
            return other.degree
        if other.is_zero or self.degree == other.degree:
            return self.degree
        raise InvalidInputError(f"Grade {self.degree} und {other.degree} passen nicht zusammen")

    def __add__(self, other: "TernaryForm") -> "TernaryForm":
        d = self._check_same_degree(other)
        return TernaryForm(self.poly + other.poly, d)

    def __sub__(self, other: "TernaryForm") -> "TernaryForm":
        d = self._check_same_degree(other)
        return TernaryForm(self.poly - other.poly, d)

    def __neg__(self) -> "TernaryForm":
        return TernaryForm(-self.poly, self.degree)

    def __mul__(self, other) -> "TernaryForm":
        if isinstance(other, TernaryForm):
            return TernaryForm(self.poly * other.poly, self.degree + other.degree)
        return TernaryForm(self.poly * _poly(to_rational(other)), self.degree)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "TernaryForm":
        return TernaryForm(self.poly ** n, self.degree * n)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TernaryForm):
            return NotImplemented
        return self.degree == other.degree and self.poly == other.poly

    __hash__ = None

    def exquo(self, other: "TernaryForm") -> Optional["TernaryForm"]:
        """Exakte Division oder None, wenn other kein Teiler ist."""
        if other.is_zero:
            raise InvalidInputError("Division durch die Nullform")
        q, r = self.poly.div(other.poly)
        if not r.is_zero:
            return None
        return TernaryForm(q, self.degree - other.degree)

    def divides(self, other: "TernaryForm") -> bool:
        return other.exquo(self) is not None

    # -- Normierung -------------------------------------------------------

    def canonical(self) -> "TernaryForm":
        """Nenner klären, Inhalt teilen, lexikographisch ersten Koeffizienten positiv machen."""
        if self.is_zero:
            return self
        _, integral = self.poly.clear_denoms(convert=True)
        _, primitive = integral.primitive()
        if primitive.LC() < 0:
            primitive = -primitive
        return TernaryForm(primitive.set_domain(QQ), self.degree)

    def proportional(self, other: "TernaryForm") -> bool:
        """Gleichheit bis auf einen rationalen Skalar != 0."""
        if self.is_zero or other.is_zero:
            return self.is_zero and other.is_zero
        return self.canonical() == other.canonical()

    def ratio_to(self, other: "TernaryForm") -> Optional[Rational]:
        """λ mit self = λ·other, sonst None."""
        if not self.proportional(other) or self.is_zero:
            return None
        e, c = next(iter(other.terms().items()))
        return self.coefficient(e) / c

    def positive_multiple_of(self, other: "TernaryForm") -> bool:
        ratio = self.ratio_to(other)
        return ratio is not None and ratio > 0

    # -- Serialisierung ---------------------------------------------------

    def to_json(self) -> dict:
        terms = sorted(self.terms().items(), reverse=True)
        return {
            "degree": self.degree,
            "terms": [{"e": list(e), "c": rational_str(c)} for e, c in terms],
        }

    @classmethod
    def from_json(cls, data: dict) -> "TernaryForm":
        try:
            degree = int(data["degree"])
            terms = {tuple(t["e"]): t["c"] for t in data["terms"]}
        except (KeyError, TypeError, ValueError) as e:
            raise InvalidInputError(f"Ungültiges Form-Dokument: {e}") from e
        return cls.from_terms(terms, degree)

    def to_text(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for e, c in sorted(self.terms().items(), reverse=True):
            monomial = "*".join(
                f"x{i}" if k == 1 else f"x{i}^{k}" for i, k in enumerate(e) if k > 0
            )
            sign = "-" if c < 0 else "+"
            magnitude = abs(c)
            if monomial and magnitude == 1:
                body = monomial
            elif monomial:
                body = f"{rational_str(magnitude)}*{monomial}"
            else:
                body = rational_str(magnitude)
            parts.append(f"{sign} {body}")
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"TernaryForm({self.to_text()}, degree={self.degree})"


def parse_form(text: str) -> TernaryForm:
    """
    Parst eine Form im Textformat.

    Raises:
        InvalidInputError: bei Syntaxfehlern, fremden Variablen oder
                           nicht-homogener Eingabe
    """
    try:
        expr = parse_expr(text.replace("−", "-"), local_dict=dict(_PARSE_LOCALS), transformations=_PARSE_TRANSFORMS)
    except Exception as e:
        raise InvalidInputError(f"Form nicht lesbar: {text!r} ({e})") from e
    unknown = expr.free_symbols - set(GENS)
    if unknown:
        raise InvalidInputError(f"Unbekannte Variablen in Form: {sorted(map(str, unknown))}")
    try:
        poly = _poly(expr)
    except Exception as e:
        raise InvalidInputError(f"Keine Polynomform: {text!r}") from e
    return TernaryForm.from_poly(poly)


def as_form(value: Union[TernaryForm, str, dict]) -> TernaryForm:
    if isinstance(value, TernaryForm):
        return value
    if isinstance(value, dict):
        return TernaryForm.from_json(value)
    return parse_form(value)


# ---------------------------------------------------------------------------
# Projektive Punkte
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ProjectivePoint:
    """Rationaler Punkt, normiert: letzte Koordinate != 0 ist 1."""
    coords: tuple[Rational, Rational, Rational]

    @classmethod
    def of(cls, *coords) -> "ProjectivePoint":
        if len(coords) == 1:
            coords = tuple(coords[0])
        if len(coords) != 3:
            raise InvalidInputError(f"Drei Koordinaten erwartet, erhalten: {coords}")
        values = [to_rational(c) for c in coords]
        pivot = next((v for v in reversed(values) if v != 0), None)
        if pivot is None:
            raise InvalidInputError("Der Nullvektor ist kein projektiver Punkt")
        return cls(tuple(v / pivot for v in values))

    @property
    def is_rational(self) -> bool:
        return True

    def to_strings(self) -> list[str]:
        return [rational_str(c) for c in self.coords]

    def real_coords(self) -> tuple[RealAlgebraicNumber, ...]:
        return tuple(RealAlgebraicNumber.from_rational(c) for c in self.coords)

    def field_coords(self, field: NumberField = RATIONAL_FIELD) -> tuple[FieldElement, ...]:
        return tuple(field.element(c) for c in self.coords)

    def __str__(self) -> str:
        return "(" + ":".join(rational_str(c) for c in self.coords) + ")"

    __repr__ = __str__


@dataclass(frozen=True, eq=False)
class AlgebraicPoint:
    """Reeller Punkt mit Koordinaten in einem Zahlkörper Q(θ) ⊂ R."""
    field: NumberField
    coords: tuple[FieldElement, FieldElement, FieldElement]

    @classmethod
    def of(cls, coords: Sequence, field: Optional[NumberField] = None) -> "AlgebraicPoint":
        field = field or field_of(coords)
        values = [field.element(c) for c in coords]
        pivot = next((v for v in reversed(values) if not v.is_zero), None)
        if pivot is None:
            raise InvalidInputError("Der Nullvektor ist kein projektiver Punkt")
        inverse = pivot.inverse()
        return cls(field, tuple(v * inverse for v in values))

    @property
    def is_rational(self) -> bool:
        return all(c.is_rational for c in self.coords)

    def to_projective(self) -> ProjectivePoint:
        return ProjectivePoint.of(*(c.rational_value for c in self.coords))

    def real_coords(self) -> tuple[RealAlgebraicNumber, ...]:
        return tuple(c.to_real() for c in self.coords)

    def field_coords(self, field: Optional[NumberField] = None) -> tuple[FieldElement, ...]:
        return self.coords

    def approx(self, digits: int = 6) -> str:
        return "(" + ":".join(c.approx(digits) for c in self.real_coords()) + ")"

    def __str__(self) -> str:
        if self.is_rational:
            return str(self.to_projective())
        return "(" + ":".join(c.expression() for c in self.coords) + ")"

    __repr__ = __str__


Point = Union[ProjectivePoint, AlgebraicPoint]


def as_point(value) -> Point:
    if isinstance(value, (ProjectivePoint, AlgebraicPoint)):
        return value
    return ProjectivePoint.of(*value)


def simplify_point(p: Point) -> Point:
    """Algebraische Punkte mit rationalen Koordinaten werden rational."""
    if isinstance(p, AlgebraicPoint) and p.is_rational:
        return p.to_projective()
    return p


def same_point(p: Point, q: Point) -> bool:
    """Projektive Gleichheit, auch zwischen verschiedenen Zahlkörpern."""
    if isinstance(p, ProjectivePoint) and isinstance(q, ProjectivePoint):
        return p == q
    p, q = simplify_point(p), simplify_point(q)
    if isinstance(p, ProjectivePoint) and isinstance(q, ProjectivePoint):
        return p == q
    if isinstance(p, ProjectivePoint) or isinstance(q, ProjectivePoint):
        return False
    if p.field.same_as(q.field):
        return all((a - b).is_zero for a, b in zip(p.coords, q.coords))
    return all(a.compare(b) == 0 for a, b in zip(p.real_coords(), q.real_coords()))


def point_in(p: Point, points: Iterable[Point]) -> bool:
    return any(same_point(p, q) for q in points)


# ---------------------------------------------------------------------------
# Auswertung und Ableitungen
# ---------------------------------------------------------------------------

def evaluate(f: TernaryForm, p: Point):
    """
    Wert von f am normierten Vertreter von p.

    Returns:
        Rational für rationale Punkte, FieldElement für algebraische Punkte
        (dessen sign() ist das exakte Vorzeichen)
    """
    if isinstance(p, ProjectivePoint):
        if f.is_zero:
            return Rational(0)
        return Rational(f.poly.eval(dict(zip(GENS, p.coords))))
    return evaluate_in_field(f, p.coords, p.field)


def evaluate_in_field(f: TernaryForm, coords: Sequence, field: NumberField) -> FieldElement:
    values = [field.element(c) for c in coords]
    powers = [[field.one()] for _ in range(3)]
    for i in range(3):
        for _ in range(f.degree):
            powers[i].append(powers[i][-1] * values[i])
    total = field.zero()
    for e, c in f.terms().items():
        total = total + powers[0][e[0]] * powers[1][e[1]] * powers[2][e[2]] * c
    return total


def evaluate_sign(f: TernaryForm, p: Point) -> int:
    value = evaluate(f, p)
    if isinstance(value, FieldElement):
        return value.sign()
    return rat_sign(value)


def vanishes_at(f: TernaryForm, p: Point) -> bool:
    value = evaluate(f, p)
    return value.is_zero if isinstance(value, FieldElement) else value == 0


def partials(f: TernaryForm) -> tuple[TernaryForm, TernaryForm, TernaryForm]:
    """∂f/∂x0, ∂f/∂x1, ∂f/∂x2; für Grad 0 drei Nullformen."""
    if f.degree == 0 or f.is_zero:
        d = max(f.degree - 1, 0)
        return TernaryForm.zero(d), TernaryForm.zero(d), TernaryForm.zero(d)
    return tuple(TernaryForm(f.poly.diff(g), f.degree - 1) for g in GENS)


def gradient_at(f: TernaryForm, p: Point) -> tuple:
    return tuple(evaluate(df, p) for df in partials(f))


def is_singular_at(f: TernaryForm, p: Point) -> bool:
    return all(vanishes_at(df, p) for df in partials(f))


def jacobian_det(f: TernaryForm, g: TernaryForm, h: TernaryForm) -> TernaryForm:
    """det J(f, g, h) per Kofaktorentwicklung; Grad deg f + deg g + deg h - 3."""
    rows = [partials(f), partials(g), partials(h)]
    a, b, c = rows
    det = (
        a[0] * (b[1] * c[2] - b[2] * c[1])
        - a[1] * (b[0] * c[2] - b[2] * c[0])
        + a[2] * (b[0] * c[1] - b[1] * c[0])
    )
    degree = f.degree + g.degree + h.degree - 3
    return TernaryForm(det.poly, degree)


def hessian_matrix(f: TernaryForm) -> list[list[TernaryForm]]:
    first = partials(f)
    return [list(partials(df)) for df in first]


# ---------------------------------------------------------------------------
# Koordinatenwechsel
# ---------------------------------------------------------------------------

def as_matrix(T) -> Matrix:
    m = T if isinstance(T, Matrix) else Matrix(T)
    if m.shape != (3, 3):
        raise InvalidInputError(f"3x3-Matrix erwartet, erhalten: {m.shape}")
    return m.applyfunc(to_rational)


def substitute_linear(poly: Poly, images: Sequence[Poly], target_gens) -> Poly:
    """Ersetzt x_i durch images[i] (Polynome in target_gens) mit gecachten Potenzen."""
    cache: dict[tuple[int, int], Poly] = {}

    def power(i: int, k: int) -> Poly:
        if k == 0:
            return Poly(1, *target_gens, domain=QQ)
        if (i, k) not in cache:
            cache[(i, k)] = power(i, k - 1) * images[i]
        return cache[(i, k)]

    result = Poly(0, *target_gens, domain=QQ)
    for e, c in poly.terms():
        term = Poly(c, *target_gens, domain=QQ)
        for i, k in enumerate(e):
            if k:
                term = term * power(i, k)
        result = result + term
    return result


def apply_projectivity(f: TernaryForm, T) -> TernaryForm:
    """
    f ∘ T, d.h. x ↦ f(T·x).

    Raises:
        InvalidInputError: wenn det T = 0
    """
    m = as_matrix(T)
    if m.det() == 0:
        raise InvalidInputError("Singuläre Matrix ist keine Projektivität")
    images = [
        Poly(sum(m[i, j] * GENS[j] for j in range(3)), *GENS, domain=QQ)
        for i in range(3)
    ]
    return TernaryForm(substitute_linear(f.poly, images, GENS), f.degree)


def map_point(T, p: Point) -> Point:
    """Bild T·p eines Punktes (Spaltenvektor)."""
    m = as_matrix(T)
    if isinstance(p, ProjectivePoint):
        v = m * Matrix(p.coords)
        return ProjectivePoint.of(*v)
    coords = [
        sum((p.coords[j] * m[i, j] for j in range(3)), p.field.zero())
        for i in range(3)
    ]
    return AlgebraicPoint.of(coords, p.field)


def random_projectivity(rng: random.Random, attempt: int = 1, spread: int = 3) -> Matrix:
    """Zufällige invertierbare ganzzahlige 3x3-Matrix.

    Die Einträge liegen in [-b, b] mit b = spread · 2^(attempt - 1): jeder
    weitere Versuch verdoppelt den Bereich.
    """
    spread = spread * 2 ** (max(attempt, 1) - 1)
    while True:
        m = Matrix(3, 3, [rng.randint(-spread, spread) for _ in range(9)])
        if m.det() != 0:
            return m


def dehomogenize(f: TernaryForm, index: int = 2) -> Poly:
    """f mit x_index = 1, als Polynom in den beiden übrigen Variablen."""
    rest = [g for i, g in enumerate(GENS) if i != index]
    return Poly(f.poly.as_expr().subs(GENS[index], 1), *rest, domain=QQ)


# ---------------------------------------------------------------------------
# ggT und Linearformen
# ---------------------------------------------------------------------------

def form_gcd(f: TernaryForm, g: TernaryForm) -> TernaryForm:
    """
    ggT über Q, kanonisch normiert; die Konstante 1 genau bei Teilerfremdheit.

    Raises:
        InvalidInputError: wenn beide Formen null sind
    """
    if f.is_zero and g.is_zero:
        raise InvalidInputError("ggT zweier Nullformen ist nicht definiert")
    if f.is_zero:
        return g.canonical()
    if g.is_zero:
        return f.canonical()
    h = f.poly.gcd(g.poly)
    degree = 0 if h.is_ground else h.total_degree()
    return TernaryForm.from_poly(h, degree).canonical()


def line_through(p: ProjectivePoint, q: ProjectivePoint) -> TernaryForm:
    """Verbindungsgerade zweier verschiedener rationaler Punkte."""
    a = Matrix(p.coords).cross(Matrix(q.coords))
    if all(v == 0 for v in a):
        raise InvalidInputError(f"Punkte {p} und {q} sind gleich")
    return TernaryForm.linear(*a).canonical()


def line_intersection(l1: TernaryForm, l2: TernaryForm) -> ProjectivePoint:
    a = [l1.coefficient(e) for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1))]
    b = [l2.coefficient(e) for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1))]
    v = Matrix(a).cross(Matrix(b))
    if all(c == 0 for c in v):
        raise InvalidInputError("Geraden sind gleich")
    return ProjectivePoint.of(*v)


def line_coefficients(l: TernaryForm) -> tuple[Rational, Rational, Rational]:
    if l.degree != 1:
        raise InvalidInputError(f"Linearform erwartet, Grad {l.degree}")
    return tuple(l.coefficient(e) for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1)))


def collinear(points: Sequence[ProjectivePoint]) -> bool:
    if len(points) < 3:
        return True
    base = Matrix([list(p.coords) for p in points])
    return base.rank() <= 2


def monomials(degree: int) -> list[tuple[int, int, int]]:
    """Exponententripel vom Grad degree in absteigender lex-Ordnung."""
    return [
        (i, j, degree - i - j)
        for i in range(degree, -1, -1)
        for j in range(degree - i, -1, -1)
    ]
