"""
SexticLab – Pydantic Models
===========================
Ergebnistypen, Eingabedokumente und Run-Reports.

Mathematische Wertobjekte (TernaryForm, Punkte, RealAlgebraicNumber)
werden als arbitrary types eingebunden; ihre JSON-Darstellung kommt über
PlainSerializer, damit model_dump(mode="json") die dokumentierten Formate
liefert.
"""

from __future__ import annotations

from enum import Enum
from typing import Annotated, Any, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, PlainSerializer
from sympy import Rational

from sextic.errors import InvalidInputError
from sextic.exact_arith import (
    FieldElement,
    RealAlgebraicNumber,
    ascending_coeffs,
    rational_str,
)
from sextic.ternary_forms import AlgebraicPoint, ProjectivePoint, TernaryForm


# ---------------------------------------------------------------------------
# Serialisierung der Wertobjekte
# ---------------------------------------------------------------------------

def point_to_json(p) -> Any:
    if isinstance(p, ProjectivePoint):
        return p.to_strings()
    if p.is_rational:
        return p.to_projective().to_strings()
    embedding = p.field.embedding
    return {
        "field": {
            "modulus": [rational_str(c) for c in ascending_coeffs(p.field.modulus)],
            "root": embedding.to_json() if embedding is not None else None,
        },
        "coords": [c.expression("θ") for c in p.coords],
        "approx": [c.approx(6) for c in p.real_coords()],
    }


def field_element_to_json(e: FieldElement) -> Any:
    if e.is_rational:
        return rational_str(e.rational_value)
    return {"expression": e.expression("θ"), "real": e.to_real().to_json()}


FormField = Annotated[TernaryForm, PlainSerializer(lambda f: f.to_json(), return_type=dict)]
PointField = Annotated[
    Union[ProjectivePoint, AlgebraicPoint],
    PlainSerializer(point_to_json, return_type=Any),
]
RealField = Annotated[RealAlgebraicNumber, PlainSerializer(lambda r: r.to_json(), return_type=dict)]
RationalField = Annotated[Rational, PlainSerializer(rational_str, return_type=str)]
FieldElementField = Annotated[FieldElement, PlainSerializer(field_element_to_json, return_type=Any)]


class MathModel(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)


# ---------------------------------------------------------------------------
# Enums
# ---------------------------------------------------------------------------

class CubicType(str, Enum):
    """Typ einer reduzierten ebenen Kubik."""
    NONSINGULAR = "nonsingular"
    NODAL_IRREDUCIBLE = "nodal-irreducible"
    CONIC_PLUS_LINE = "conic-plus-line-two-real-transversal"
    TRIANGLE = "triangle"
    INADMISSIBLE_OTHER = "inadmissible-other"

    @property
    def admissible(self) -> bool:
        return self is not CubicType.INADMISSIBLE_OTHER


class SingularityType(str, Enum):
    NODE = "node"           # zwei reelle Tangenten
    ACNODE = "acnode"       # konjugierte Tangenten, isolierter Punkt
    CUSP = "cusp"           # doppelte Tangente
    HIGHER = "higher"       # quadratischer Teil verschwindet


class CurveSign(str, Enum):
    """Vorzeichenmuster einer Form auf X(R)."""
    NONNEGATIVE = "nonnegative"
    NONPOSITIVE = "nonpositive"
    INDEFINITE = "indefinite"
    IDENTICALLY_ZERO = "identically-zero-on-curve"


class AdmissibilityReason(str, Enum):
    NOT_NINE_POINTS = "not-nine-points"
    NO_UNIQUE_CUBIC = "no-unique-cubic"
    CUBIC_TYPE_EXCLUDED = "cubic-type-excluded"
    POINT_SINGULAR_ON_CUBIC = "point-singular-on-cubic"
    PENCIL_DIMENSION_NOT_TWO = "pencil-dimension-not-two"
    INDEFINITE_ON_CURVE = "indefinite-on-curve"
    OK = "ok"


class OutcomeKind(str, Enum):
    TENTH_ZERO = "tenth-zero"
    A3 = "A3-at"


class CandidateSource(str, Enum):
    LOCAL_THRESHOLD = "local-threshold"
    SINGULAR_POINT = "singular-point"
    MULTIPLE_COMPONENT = "multiple-component"


class EightPointMethod(str, Enum):
    EXTREME_NINTH_POINT = "extreme-ninth-point"
    TANGENCY_JET = "tangency-jet"
    HILBERT = "hilbert"


# ---------------------------------------------------------------------------
# Kubiken
# ---------------------------------------------------------------------------

class SingularPoint(MathModel):
    point: PointField
    kind: SingularityType


class CubicClassification(MathModel):
    """Reduzierte Kubik mit Singularitätenzensus und Typ."""
    form: FormField
    singular_points: list[SingularPoint] = Field(default_factory=list)
    nonreal_singular_count: int = Field(default=0, description="Anzahl nicht-reeller singulärer Punkte")
    type_tag: CubicType
    inadmissible_reason: Optional[str] = None


class LocalQuadraticData(MathModel):
    """q lokal bei P, nachdem f den linearen Anteil x hat: a x² + b xy + c y²."""
    point: PointField
    a: RationalField
    b: RationalField
    c: RationalField


class NinthBasePoint(MathModel):
    point: PointField
    in_t: bool = Field(description="Neunter Punkt liegt bereits in T")


# ---------------------------------------------------------------------------
# Zulässigkeit
# ---------------------------------------------------------------------------

class AdmissibilityCertificate(MathModel):
    admissible: bool
    points: list[PointField]
    cubic: Optional[CubicClassification] = None
    pencil_generator: Optional[FormField] = Field(
        default=None, description="Vorzeichennormiertes q mit q >= 0 auf X(R)"
    )
    reason: AdmissibilityReason
    detail: Optional[str] = None


class EightPointOutcome(MathModel):
    """Ergebnis der Neuntpunkt-Konstruktion für acht Punkte."""
    found: bool
    point: Optional[PointField] = None
    in_t: bool = False
    cubic: FormField
    cubic_type: CubicType
    ninth_base_point: Optional[PointField] = None
    residual_point: Optional[PointField] = None
    reason: Optional[str] = None


class EightPointSextic(MathModel):
    form: FormField
    method: EightPointMethod
    ninth_point: Optional[PointField] = None
    multiplier: Optional[RationalField] = None


class TenPointOutcome(MathModel):
    possible: bool
    form: Optional[FormField] = None
    removed_point: Optional[PointField] = None
    reason: Optional[str] = None


# ---------------------------------------------------------------------------
# Extremer Bleistift
# ---------------------------------------------------------------------------

class ThresholdEntry(MathModel):
    point: PointField
    value: RationalField


class ExceptionalCandidate(MathModel):
    value: RealField
    exact: Optional[FieldElementField] = None
    source: CandidateSource
    point: Optional[PointField] = None


class A3Analysis(MathModel):
    """Quartischer Jet nach quadratischer Ergänzung: q_s = c m² + e n³ + c1 m n² + d n⁴ + ..."""
    point: PointField
    cubic_coefficient: RationalField
    mixed_coefficient: RationalField
    quartic_coefficient: RationalField
    invariant: RationalField = Field(description="d - c1²/(4c)")
    conjugate_branches: bool


class ExtremePencilResult(MathModel):
    f: FormField
    q: FormField
    local_thresholds: list[ThresholdEntry]
    exceptional_set: list[RealField]
    candidates: list[ExceptionalCandidate] = Field(default_factory=list)
    s: RealField
    s_exact: Optional[FieldElementField] = Field(
        default=None, description="s als Element des Körpers der zehnten Nullstelle"
    )
    outcome: OutcomeKind
    tenth_zero: Optional[PointField] = None
    extra_zeros: list[PointField] = Field(default_factory=list)
    a3_point: Optional[PointField] = None
    a3: Optional[A3Analysis] = None
    verified_above: Optional[bool] = None
    verified_below: Optional[bool] = None

    def q_s_json(self) -> dict:
        return {"base": self.q.to_json(), "fsq_coeff_is_s": True}

    def form_at(self, t) -> TernaryForm:
        """q + t·f² für rationales t."""
        return self.q + self.f ** 2 * t

    def rational_form(self) -> Optional[TernaryForm]:
        """q_S als rationale Form, falls s rational ist."""
        if not self.s.is_rational:
            return None
        return self.form_at(self.s.rational_value)


class PsdVerdict(MathModel):
    psd: bool
    witness: Optional[PointField] = None
    witness_value: Optional[RationalField] = None
    zeros_confirmed: Optional[bool] = None


class SampleCertificate(MathModel):
    """Stichprobenprüfung von q + s⁻·f² an rationalen Punkten."""
    passed: bool
    checked: int
    lower_bound: RationalField = Field(description="s⁻, untere Intervallgrenze von s")
    failure: Optional[PointField] = None


# ---------------------------------------------------------------------------
# Coble-Nonik
# ---------------------------------------------------------------------------

class CobleNonic(MathModel):
    points: list[PointField]
    form: FormField
    basis_used: tuple[FormField, FormField, FormField]


class TenthZeroCandidates(MathModel):
    pair: tuple[PointField, PointField]
    points: list[PointField]
    shared_component: Optional[FormField] = None


# ---------------------------------------------------------------------------
# Dokumente (Ein-/Ausgabe)
# ---------------------------------------------------------------------------

class PointSetDocument(BaseModel):
    """Punktmenge als Liste von Koordinatentripeln mit "p/q"-Strings."""
    points: list[list[str]] = Field(description="Koordinatentripel, rationale Strings")
    labels: Optional[list[str]] = None

    def to_points(self) -> list[ProjectivePoint]:
        result = []
        for coords in self.points:
            if len(coords) != 3:
                raise InvalidInputError(f"Drei Koordinaten erwartet: {coords}")
            result.append(ProjectivePoint.of(*coords))
        return result

    @classmethod
    def from_points(cls, points, labels: Optional[list[str]] = None) -> "PointSetDocument":
        return cls(points=[[str(c) for c in p.coords] for p in points], labels=labels)


class TermDocument(BaseModel):
    e: list[int]
    c: str


class FormDocument(BaseModel):
    degree: int
    terms: list[TermDocument]

    def to_form(self) -> TernaryForm:
        return TernaryForm.from_json(self.model_dump())

    @classmethod
    def from_form(cls, f: TernaryForm) -> "FormDocument":
        return cls.model_validate(f.to_json())


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------

class DisplayValue(BaseModel):
    """Exakter Wert plus Dezimalanzeige mit zertifizierter Fehlerschranke."""
    label: str
    exact: str
    approx: str
    error_bound: str


class RunReport(BaseModel):
    command: str
    input_digest: str
    seed: int
    seed_overridden: bool = False
    exit_code: int
    summary: str
    payload: dict = Field(default_factory=dict)
    display: list[DisplayValue] = Field(default_factory=list)
    wall_time_seconds: Optional[float] = None


class ExampleCheck(BaseModel):
    name: str
    passed: bool
    detail: str = ""


class ExampleReport(BaseModel):
    example_id: str
    title: str
    checks: list[ExampleCheck] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


class ExamplesRunReport(BaseModel):
    examples: list[ExampleReport]
    passed: bool
