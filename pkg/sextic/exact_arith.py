"""
SexticLab – Exakte Arithmetik
=============================
Rationale Zahlen (sympy.Rational), univariate Polynome (sympy.Poly über QQ),
Resultanten, Sturm-Isolation reeller Nullstellen, reell-algebraische Zahlen
und einfache Zahlkörper Q(θ) mit gewählter reeller Einbettung.

Reell-algebraische Zahlen tragen immer ein irreduzibles, normiertes
Minimalpolynom. Gleichheit ist damit ein reiner Polynomvergleich plus
Intervalltest, Vergleiche terminieren immer.

Kein Fliesskomma in diesem Modul.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cmp_to_key
from typing import Callable, Iterable, Optional, Sequence, Union

from sympy import Poly, QQ, Rational, Symbol, sympify
from sympy.polys.matrices import DomainMatrix

from sextic.errors import InconsistencyError, InvalidInputError

logger = logging.getLogger(__name__)

X = Symbol("X")
_Y = Symbol("_Y")
_Z = Symbol("_Z")

Scalar = Union[int, Rational]


# ---------------------------------------------------------------------------
# Rationale Zahlen und univariate Polynome
# ---------------------------------------------------------------------------

def to_rational(value) -> Rational:
    """Konvertiert int, str ("p/q") oder sympy-Zahl in ein gekürztes Rational."""
    if isinstance(value, str):
        value = value.strip().replace("−", "-")
    try:
        r = Rational(value)
    except (TypeError, ValueError) as e:
        raise InvalidInputError(f"Keine rationale Zahl: {value!r}") from e
    if not r.is_Rational:
        raise InvalidInputError(f"Keine rationale Zahl: {value!r}")
    return r


def rational_str(r: Rational) -> str:
    """Serialisiert als "p/q" bzw. "p" für ganze Zahlen."""
    return str(Rational(r))


def rat_sign(r) -> int:
    r = Rational(r)
    if r.is_positive:
        return 1
    if r.is_negative:
        return -1
    return 0


def unipoly(data) -> Poly:
    """
    Baut ein univariates Polynom in X über QQ.

    Args:
        data: Poly, Ausdruck/String in X oder Liste von Koeffizienten
              (aufsteigender Grad)
    """
    if isinstance(data, Poly):
        if len(data.gens) != 1:
            raise InvalidInputError(f"Univariates Polynom erwartet, erhalten: {data}")
        return Poly(data.as_expr().subs(data.gens[0], X), X, domain=QQ)
    if isinstance(data, (list, tuple)):
        coeffs = [to_rational(c) for c in data]
        return Poly(list(reversed(coeffs)) or [0], X, domain=QQ)
    expr = sympify(data.replace("^", "**") if isinstance(data, str) else data)
    free = expr.free_symbols
    if len(free) > 1:
        raise InvalidInputError(f"Univariates Polynom erwartet, erhalten: {data}")
    if free:
        expr = expr.subs(next(iter(free)), X)
    return Poly(expr, X, domain=QQ)


def ascending_coeffs(p: Poly) -> list[Rational]:
    if p.is_zero:
        return []
    return list(reversed(p.all_coeffs()))


def resultant(p: Poly, q: Poly):
    """
    Sylvester-Resultante bezüglich der ersten Variablen.

    Raises:
        InvalidInputError: wenn eines der Polynome null ist
    """
    if p.is_zero or q.is_zero:
        raise InvalidInputError("Resultante des Nullpolynoms ist nicht definiert")
    return p.resultant(q)


# ---------------------------------------------------------------------------
# Sturm-Ketten
# ---------------------------------------------------------------------------

def _variations(values: Iterable) -> int:
    signs = [rat_sign(v) for v in values]
    signs = [s for s in signs if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _variations_at(chain: Sequence[Poly], a: Rational) -> int:
    return _variations(s.eval(a) for s in chain)


def _variations_at_infinity(chain: Sequence[Poly], positive: bool) -> int:
    values = []
    for s in chain:
        lc = s.LC()
        deg = s.degree()
        if not positive and deg % 2 == 1:
            lc = -lc
        values.append(lc)
    return _variations(values)


def sturm_chain(p: Poly) -> list[Poly]:
    return unipoly(p).sqf_part().sturm()


def sturm_root_count(p: Poly) -> int:
    """Anzahl verschiedener reeller Nullstellen aus der vollen Sturm-Kette."""
    p = unipoly(p)
    if p.is_zero:
        raise InvalidInputError("Nullpolynom hat keine isolierbaren Nullstellen")
    if p.degree() == 0:
        return 0
    chain = sturm_chain(p)
    return _variations_at_infinity(chain, False) - _variations_at_infinity(chain, True)


def count_roots_closed(chain: Sequence[Poly], lo: Rational, hi: Rational) -> int:
    """Nullstellen der quadratfreien chain[0] in [lo, hi]."""
    n = _variations_at(chain, lo) - _variations_at(chain, hi)
    if chain[0].eval(lo) == 0:
        n += 1
    return n


def cauchy_bound(p: Poly) -> Rational:
    """Zweierpotenz B mit |Nullstelle| < B für alle komplexen Nullstellen."""
    coeffs = p.all_coeffs()
    lc = abs(coeffs[0])
    bound = 1 + max((abs(c) / lc for c in coeffs[1:]), default=Rational(0))
    b = Rational(1)
    while b < bound:
        b *= 2
    return b


def _isolate_irreducible(m: Poly) -> list[tuple[Rational, Rational]]:
    """Isolationsintervalle eines irreduziblen Polynoms vom Grad >= 2."""
    chain = m.sturm()
    b = cauchy_bound(m)
    pending = [(-b, b)]
    found: list[tuple[Rational, Rational]] = []
    while pending:
        lo, hi = pending.pop()
        n = _variations_at(chain, lo) - _variations_at(chain, hi)
        if n == 0:
            continue
        if n == 1:
            found.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        pending.append((lo, mid))
        pending.append((mid, hi))
    return found


# ---------------------------------------------------------------------------
# Reell-algebraische Zahlen
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class RealAlgebraicNumber:
    """
    Reelle Nullstelle eines irreduziblen, normierten Polynoms mit
    Isolationsintervall [lo, hi]. Rationale Zahlen: X - r, lo = hi = r.
    """
    defining: Poly
    lo: Rational
    hi: Rational

    # -- Konstruktion -----------------------------------------------------

    @classmethod
    def from_rational(cls, r) -> "RealAlgebraicNumber":
        r = to_rational(r)
        return cls(Poly(X - r, X, domain=QQ), r, r)

    @classmethod
    def from_interval(cls, p, lo, hi, irreducible: bool = False) -> "RealAlgebraicNumber":
        """
        Wählt die eindeutige Nullstelle von p in [lo, hi].
        Mit irreducible=True wird p als irreduzibel und normiert übernommen.

        Raises:
            InvalidInputError: wenn p in [lo, hi] nicht genau eine Nullstelle hat
        """
        p = unipoly(p)
        lo, hi = to_rational(lo), to_rational(hi)
        if p.is_zero or lo > hi:
            raise InvalidInputError("Ungültige Daten für eine algebraische Zahl")
        if count_roots_closed(sturm_chain(p), lo, hi) != 1:
            raise InvalidInputError(f"{p.as_expr()} hat in [{lo}, {hi}] nicht genau eine Nullstelle")
        if irreducible and p.degree() >= 2:
            return cls(p.to_field().monic(), lo, hi)
        for factor, _ in p.factor_list()[1]:
            factor = factor.to_field().monic()
            if count_roots_closed(factor.sturm(), lo, hi) == 1:
                if factor.degree() == 1:
                    return cls.from_rational(-factor.nth(0))
                return cls(factor, lo, hi)
        raise InconsistencyError("Keine Faktorisierung enthält die isolierte Nullstelle")

    # -- Eigenschaften ----------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.defining.degree() == 1

    @property
    def rational_value(self) -> Rational:
        if not self.is_rational:
            raise InvalidInputError("Zahl ist nicht rational")
        return -self.defining.nth(0)

    @property
    def width(self) -> Rational:
        return self.hi - self.lo

    def refine(self, width) -> "RealAlgebraicNumber":
        """Halbiert das Intervall, bis hi - lo <= width."""
        if self.is_rational:
            return self
        width = to_rational(width)
        lo, hi = self.lo, self.hi
        s_lo = rat_sign(self.defining.eval(lo))
        while hi - lo > width:
            mid = (lo + hi) / 2
            s_mid = rat_sign(self.defining.eval(mid))
            if s_mid == s_lo:
                lo = mid
            else:
                hi = mid
        return RealAlgebraicNumber(self.defining, lo, hi)

    def bisect(self) -> "RealAlgebraicNumber":
        return self.refine(self.width / 2)

    # -- Vergleich --------------------------------------------------------

    def compare(self, other: Union["RealAlgebraicNumber", Scalar]) -> int:
        """Exakter Vergleich, Ergebnis in {-1, 0, 1}."""
        if not isinstance(other, RealAlgebraicNumber):
            other = RealAlgebraicNumber.from_rational(other)
        if self.is_rational and other.is_rational:
            return rat_sign(self.rational_value - other.rational_value)
        a, b = self, other
        if a.defining == b.defining:
            lo, hi = max(a.lo, b.lo), min(a.hi, b.hi)
            if lo <= hi and count_roots_closed(a.defining.sturm(), lo, hi) == 1:
                return 0
        # verschiedene irreduzible Polynome haben keine gemeinsame Nullstelle
        while not (a.hi < b.lo or b.hi < a.lo):
            a, b = a.bisect(), b.bisect()
        return -1 if a.hi < b.lo else 1

    def sign(self) -> int:
        return self.compare(0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, (RealAlgebraicNumber, int, Rational)):
            return NotImplemented
        return self.compare(other) == 0

    def __lt__(self, other) -> bool:
        return self.compare(other) < 0

    def __le__(self, other) -> bool:
        return self.compare(other) <= 0

    def __gt__(self, other) -> bool:
        return self.compare(other) > 0

    def __ge__(self, other) -> bool:
        return self.compare(other) >= 0

    __hash__ = None

    # -- Arithmetik -------------------------------------------------------

    def __neg__(self) -> "RealAlgebraicNumber":
        if self.is_rational:
            return RealAlgebraicNumber.from_rational(-self.rational_value)
        neg = Poly(self.defining.as_expr().subs(X, -X), X, domain=QQ).monic()
        return RealAlgebraicNumber(neg, -self.hi, -self.lo)

    def __add__(self, other) -> "RealAlgebraicNumber":
        if not isinstance(other, RealAlgebraicNumber):
            other = RealAlgebraicNumber.from_rational(other)
        if self.is_rational and other.is_rational:
            return RealAlgebraicNumber.from_rational(self.rational_value + other.rational_value)
        a = Poly(self.defining.as_expr().subs(X, _Y), _Y, _Z, domain=QQ)
        b = Poly(other.defining.as_expr().subs(X, _Z - _Y), _Y, _Z, domain=QQ)
        composed = unipoly(Poly(a.resultant(b).as_expr().subs(_Z, X), X, domain=QQ))
        return _select_root(composed, self, other, lambda u, v: (u.lo + v.lo, u.hi + v.hi))

    __radd__ = __add__

    def __sub__(self, other) -> "RealAlgebraicNumber":
        if not isinstance(other, RealAlgebraicNumber):
            other = RealAlgebraicNumber.from_rational(other)
        return self + (-other)

    def __mul__(self, other) -> "RealAlgebraicNumber":
        if not isinstance(other, RealAlgebraicNumber):
            other = RealAlgebraicNumber.from_rational(other)
        if self.is_rational and other.is_rational:
            return RealAlgebraicNumber.from_rational(self.rational_value * other.rational_value)
        if self.sign() == 0 or other.sign() == 0:
            return RealAlgebraicNumber.from_rational(0)
        a = Poly(self.defining.as_expr().subs(X, _Y), _Y, _Z, domain=QQ)
        n = other.defining.degree()
        homog = sum(
            c * _Z ** i * _Y ** (n - i)
            for i, c in enumerate(ascending_coeffs(other.defining))
        )
        b = Poly(homog, _Y, _Z, domain=QQ)
        composed = Poly(a.resultant(b).as_expr().subs(_Z, X), X, domain=QQ)

        def enclosure(u, v):
            products = [u.lo * v.lo, u.lo * v.hi, u.hi * v.lo, u.hi * v.hi]
            return min(products), max(products)

        return _select_root(composed, self, other, enclosure)

    __rmul__ = __mul__

    # -- Darstellung ------------------------------------------------------

    def approx(self, digits: int = 6) -> str:
        """Dezimaldarstellung mit Fehler höchstens 10^-digits."""
        if self.is_rational:
            return format_decimal(self.rational_value, digits)
        refined = self.refine(Rational(1, 10 ** (digits + 1)))
        return format_decimal((refined.lo + refined.hi) / 2, digits)

    def error_bound(self, digits: int = 6) -> str:
        return "0" if self.is_rational else f"1e-{digits}"

    def __float__(self) -> float:
        refined = self.refine(Rational(1, 2 ** 60))
        return float((refined.lo + refined.hi) / 2)

    def to_json(self, digits: int = 6) -> dict:
        return {
            "defining": [rational_str(c) for c in ascending_coeffs(self.defining)],
            "lo": rational_str(self.lo),
            "hi": rational_str(self.hi),
            "approx": self.approx(digits),
        }

    def __repr__(self) -> str:
        if self.is_rational:
            return f"RealAlgebraicNumber({self.rational_value})"
        return f"RealAlgebraicNumber({self.defining.as_expr()}, [{self.lo}, {self.hi}])"


def format_decimal(r: Rational, digits: int) -> str:
    """Rundet r auf digits Nachkommastellen (half up) als String."""
    r = Rational(r)
    negative = r < 0
    r = abs(r)
    scale = 10 ** digits
    n = (2 * r.p * scale + r.q) // (2 * r.q)
    whole, frac = divmod(int(n), scale)
    text = f"{whole}.{frac:0{digits}d}" if digits > 0 else f"{whole}"
    if negative and n != 0:
        text = "-" + text
    return text


def _select_root(
    composed: Poly,
    a: RealAlgebraicNumber,
    b: RealAlgebraicNumber,
    enclosure: Callable[[RealAlgebraicNumber, RealAlgebraicNumber], tuple[Rational, Rational]],
) -> RealAlgebraicNumber:
    """Wählt die Nullstelle von composed, die im Einschluss von (a, b) liegt."""
    composed = unipoly(composed)
    chain = sturm_chain(composed)
    while True:
        lo, hi = enclosure(a, b)
        if count_roots_closed(chain, lo, hi) == 1:
            return RealAlgebraicNumber.from_interval(composed.sqf_part(), lo, hi)
        a, b = a.bisect(), b.bisect()


def isolate_real_roots(p) -> list[RealAlgebraicNumber]:
    """
    Isoliert alle verschiedenen reellen Nullstellen, aufsteigend sortiert.

    Raises:
        InvalidInputError: für das Nullpolynom
    """
    p = unipoly(p)
    if p.is_zero:
        raise InvalidInputError("Nullpolynom: Nullstellen nicht isolierbar")
    if p.degree() <= 0:
        return []
    roots: list[RealAlgebraicNumber] = []
    for factor, _ in p.factor_list()[1]:
        factor = factor.to_field().monic()
        if factor.degree() == 1:
            roots.append(RealAlgebraicNumber.from_rational(-factor.nth(0)))
            continue
        for lo, hi in _isolate_irreducible(factor):
            roots.append(RealAlgebraicNumber(factor, lo, hi))
    roots = _sort_disjoint(roots)
    logger.debug(f"🔍 {len(roots)} reelle Nullstellen isoliert (Grad {p.degree()})")
    return roots


def _sort_disjoint(roots: list[RealAlgebraicNumber]) -> list[RealAlgebraicNumber]:
    """Sortiert paarweise verschiedene Zahlen und verfeinert bis zur Disjunktheit."""
    ordered = sorted(roots, key=cmp_to_key(lambda u, v: u.compare(v)))
    result: list[RealAlgebraicNumber] = []
    for r in ordered:
        while result and not result[-1].hi < r.lo:
            result[-1] = result[-1].bisect()
            r = r.bisect()
        result.append(r)
    return result


def sign_at(p, a: RealAlgebraicNumber) -> int:
    """Exaktes Vorzeichen von p(a): gcd-Test, danach Intervallverfeinerung."""
    p = unipoly(p)
    if p.is_zero:
        return 0
    if a.is_rational:
        return rat_sign(p.eval(a.rational_value))
    if p.rem(a.defining).is_zero:
        return 0
    chain = sturm_chain(p)
    while count_roots_closed(chain, a.lo, a.hi) > 0:
        a = a.bisect()
    return rat_sign(p.eval(a.lo))


def rational_between(a: RealAlgebraicNumber, b: RealAlgebraicNumber) -> Rational:
    """Eine rationale Zahl strikt zwischen a < b (einfacher Nenner bevorzugt)."""
    if a.compare(b) >= 0:
        raise InvalidInputError("rational_between erwartet a < b")
    while not a.hi < b.lo:
        a, b = a.bisect(), b.bisect()
    return simplest_between(a.hi, b.lo)


def simplest_between(lo: Rational, hi: Rational) -> Rational:
    """Rationale Zahl mit kleinem Zweierpotenz-Nenner im offenen Intervall (lo, hi)."""
    lo, hi = Rational(lo), Rational(hi)
    if not lo < hi:
        raise InvalidInputError("simplest_between erwartet lo < hi")
    den = 1
    while True:
        candidate = Rational((lo * den).floor() + 1, den)
        if candidate < hi:
            return candidate
        den *= 2


def sample_points(breakpoints: Sequence[RealAlgebraicNumber]) -> list[Rational]:
    """Je ein rationaler Punkt vor, zwischen und nach sortierten Bruchstellen."""
    if not breakpoints:
        return [Rational(0)]
    first = breakpoints[0].refine(1)
    last = breakpoints[-1].refine(1)
    samples = [(first.lo - 1).floor()]
    for a, b in zip(breakpoints, breakpoints[1:]):
        samples.append(rational_between(a, b))
    samples.append((last.hi + 1).ceiling())
    return [Rational(s) for s in samples]


# ---------------------------------------------------------------------------
# Zahlkörper Q(θ) mit reeller Einbettung
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class NumberField:
    """Q[θ]/(m) mit m irreduzibel; embedding ist die gewählte reelle Wurzel."""
    modulus: Poly
    embedding: Optional[RealAlgebraicNumber]

    @classmethod
    def symbolic(cls, modulus: Poly) -> "NumberField":
        """Körper ohne gewählte Einbettung (nur für exakte Rechnungen, ohne Vorzeichen)."""
        return cls(modulus.to_field().monic(), None)

    @classmethod
    def rational(cls) -> "NumberField":
        return RATIONAL_FIELD

    @classmethod
    def from_root(cls, root: RealAlgebraicNumber) -> "NumberField":
        if root.is_rational:
            return RATIONAL_FIELD
        return cls(root.defining, root)

    @property
    def degree(self) -> int:
        return self.modulus.degree()

    @property
    def is_rational(self) -> bool:
        return self.degree == 1

    def same_as(self, other: "NumberField") -> bool:
        if self is other:
            return True
        if self.is_rational and other.is_rational:
            return True
        if self.modulus != other.modulus:
            return False
        if self.embedding is None or other.embedding is None:
            return self.embedding is None and other.embedding is None
        return self.embedding.compare(other.embedding) == 0

    def embed(self, root: RealAlgebraicNumber) -> "NumberField":
        """Derselbe Körper mit der reellen Einbettung root."""
        return NumberField(self.modulus, root)

    def element(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if not self.same_as(value.field):
                if value.field.is_rational:
                    return self.element(value.rational_value)
                raise InvalidInputError("Elemente verschiedener Zahlkörper")
            return value
        if isinstance(value, Poly):
            rep = Poly(value.as_expr().subs(value.gens[0], X), X, domain=QQ)
        else:
            rep = Poly(to_rational(value), X, domain=QQ)
        return FieldElement(self, rep.rem(self.modulus))

    def generator(self) -> "FieldElement":
        return self.element(Poly(X, X, domain=QQ))

    def zero(self) -> "FieldElement":
        return self.element(0)

    def one(self) -> "FieldElement":
        return self.element(1)


RATIONAL_FIELD = NumberField(Poly(X, X, domain=QQ), RealAlgebraicNumber.from_rational(0))


@dataclass(frozen=True, eq=False)
class FieldElement:
    """Element von Q(θ), dargestellt als Polynom in θ vom Grad < [K:Q]."""
    field: NumberField
    rep: Poly

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if self.field.same_as(other.field):
                return other
            if other.field.is_rational:
                return self.field.element(other.rational_value)
            if self.field.is_rational:
                raise _Promote(other.field)
            raise InvalidInputError("Elemente verschiedener Zahlkörper")
        return self.field.element(other)

    def _binary(self, other, op) -> "FieldElement":
        try:
            other = self._coerce(other)
        except _Promote as promote:
            return op(promote.field.element(self.rational_value), other)
        return op(self, other)

    @property
    def is_zero(self) -> bool:
        return self.rep.is_zero

    @property
    def is_rational(self) -> bool:
        return self.rep.degree() <= 0

    @property
    def rational_value(self) -> Rational:
        if not self.is_rational:
            raise InvalidInputError("Element ist nicht rational")
        return Rational(self.rep.nth(0))

    def __add__(self, other):
        return self._binary(other, lambda a, b: FieldElement(a.field, (a.rep + b.rep).rem(a.field.modulus)))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, -self.rep)

    def __sub__(self, other):
        return self._binary(other, lambda a, b: FieldElement(a.field, (a.rep - b.rep).rem(a.field.modulus)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        return self._binary(other, lambda a, b: FieldElement(a.field, (a.rep * b.rep).rem(a.field.modulus)))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = self.field.one()
        for _ in range(n):
            result = result * self
        return result

    def inverse(self) -> "FieldElement":
        if self.is_zero:
            raise InvalidInputError("Division durch null im Zahlkörper")
        if self.field.is_rational:
            return self.field.element(1 / self.rational_value)
        return FieldElement(self.field, self.rep.invert(self.field.modulus))

    def __truediv__(self, other):
        return self._binary(other, lambda a, b: a * b.inverse())

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __eq__(self, other) -> bool:
        if not isinstance(other, (FieldElement, int, Rational)):
            return NotImplemented
        return (self - other).is_zero

    __hash__ = None

    def sign(self) -> int:
        if self.is_zero:
            return 0
        if self.is_rational:
            return rat_sign(self.rational_value)
        if self.field.embedding is None:
            raise InconsistencyError("Vorzeichen in einem Körper ohne Einbettung")
        return sign_at(self.rep, self.field.embedding)

    def minimal_polynomial(self) -> Poly:
        """Normiertes Minimalpolynom über Q: quadratfreier Teil des charakteristischen Polynoms."""
        if self.is_rational:
            return Poly(X - self.rational_value, X, domain=QQ)
        n = self.field.degree
        columns = []
        basis = Poly(1, X, domain=QQ)
        for _ in range(n):
            image = (self.rep * basis).rem(self.field.modulus)
            columns.append([image.nth(i) for i in range(n)])
            basis = basis * Poly(X, X, domain=QQ)
        rows = [[columns[j][i] for j in range(n)] for i in range(n)]
        matrix = DomainMatrix.from_list_sympy(n, n, rows).convert_to(QQ)
        char = Poly([QQ.to_sympy(c) for c in matrix.charpoly()], X, domain=QQ)
        return char.sqf_part().monic()

    def to_real(self) -> RealAlgebraicNumber:
        """Bild unter der reellen Einbettung als RealAlgebraicNumber."""
        if self.is_rational:
            return RealAlgebraicNumber.from_rational(self.rational_value)
        minpoly = self.minimal_polynomial()
        if minpoly.degree() == 1:
            return RealAlgebraicNumber.from_rational(-minpoly.nth(0))
        chain = minpoly.sturm()
        theta = self.field.embedding
        while True:
            lo, hi = interval_eval(self.rep, theta.lo, theta.hi)
            if count_roots_closed(chain, lo, hi) == 1:
                return RealAlgebraicNumber.from_interval(minpoly, lo, hi, irreducible=True)
            theta = theta.bisect()

    def expression(self, name: str = "α") -> str:
        return str(self.rep.as_expr().subs(X, Symbol(name)))

    def __repr__(self) -> str:
        return f"FieldElement({self.expression()})"


class _Promote(Exception):
    def __init__(self, field: NumberField):
        self.field = field


def interval_eval(p: Poly, lo: Rational, hi: Rational) -> tuple[Rational, Rational]:
    """Horner-Auswertung von p auf [lo, hi] in Intervallarithmetik."""
    coeffs = p.all_coeffs() if not p.is_zero else [0]
    acc_lo = acc_hi = Rational(coeffs[0])
    for c in coeffs[1:]:
        products = [acc_lo * lo, acc_lo * hi, acc_hi * lo, acc_hi * hi]
        acc_lo, acc_hi = min(products) + c, max(products) + c
    return acc_lo, acc_hi


def field_of(values: Iterable) -> NumberField:
    """Gemeinsamer Körper einer Sammlung von Zahlen und Körperelementen."""
    field: Optional[NumberField] = None
    for v in values:
        if isinstance(v, FieldElement) and not v.field.is_rational:
            if field is None:
                field = v.field
            elif not field.same_as(v.field):
                raise InvalidInputError("Koordinaten aus verschiedenen Zahlkörpern")
    return field or RATIONAL_FIELD
