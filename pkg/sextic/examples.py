"""
SexticLab – Beispielprüfungen
=============================
Reproduziert die durchgerechneten Beispiele aus eval/examples.json exakt:
Zulässigkeit, s, zehnte Nullstelle bzw. A3-Punkt, Coble-Nonik, die
Familien S_u. Jede Aussage wird zu einem ExampleCheck; ein Beispiel ist
bestanden, wenn alle Checks bestanden sind.

Wird von der CLI (examples run|list) und von eval/run_examples.py benutzt.
"""

import json
import logging
from itertools import combinations, permutations
from pathlib import Path
from typing import Callable, Optional

from sympy import Rational

from sextic import config
from sextic.admissibility import triangle_criterion
from sextic.coble import coble_nonic, ninth_zero_membership, verify_triple_points
from sextic.elimination import solve_forms
from sextic.exact_arith import isolate_real_roots, to_rational, unipoly
from sextic.extreme_pencil import verify_psd
from sextic.graph import check_admissible, extreme_sextic
from sextic.interpolation import eight_point_cone_dimensions, in_span, singular_at, sos_membership, vanishing
from sextic.models import ExampleCheck, ExampleReport, ExamplesRunReport, OutcomeKind
from sextic.seeding import make_rng
from sextic.ternary_forms import (
    ProjectivePoint,
    TernaryForm,
    parse_form,
    partials,
    point_in,
    same_point,
    vanishes_at,
)

logger = logging.getLogger(__name__)

TOLERANCE = Rational(1, 10 ** 4)


# ---------------------------------------------------------------------------
# Fixtures
# ---------------------------------------------------------------------------

def load_fixtures(path: Optional[Path] = None) -> dict:
    """Lädt eval/examples.json (bzw. SEXTIC_FIXTURE_DIR/examples.json)."""
    path = Path(path) if path else config.FIXTURE_DIR / "examples.json"
    with open(path, "r", encoding="utf-8") as f:
        return json.load(f)


def _example(fixtures: dict, key: str) -> dict:
    """Beispiel nach Nummer ("5.3") oder Kurzname ("a3")."""
    for entry in fixtures["examples"]:
        if key in (entry["id"], entry.get("name")):
            return entry
    raise KeyError(f"Unbekanntes Beispiel: {key}")


def points_of(rows) -> list[ProjectivePoint]:
    return [ProjectivePoint.of(*row) for row in rows]


def robinson_family_sextic(fixture: dict, u) -> TernaryForm:
    """q_u = u⁶(u²+2)·f² − 3u⁴·(x²−z²)(y²−z²)(x²+y²−z²) + (2u²+1)·f'²."""
    u = to_rational(u)
    f, f_prime = parse_form(fixture["f"]), parse_form(fixture["f_prime"])
    mixed = parse_form(fixture["mixed"])
    return f ** 2 * (u ** 6 * (u ** 2 + 2)) - mixed * (3 * u ** 4) + f_prime ** 2 * (2 * u ** 2 + 1)


def symmetric_points(fixture: dict, u) -> list[ProjectivePoint]:
    """S_u: alle Permutationen von (1:0:0), (1:−1:0) und (1:1:u), ohne Duplikate."""
    u = to_rational(u)
    rows = [tuple(to_rational(c) for c in g) for g in fixture["generators"]] + [(1, 1, u)]
    result: list[ProjectivePoint] = []
    for row in rows:
        for perm in permutations(row):
            P = ProjectivePoint.of(*perm)
            if not point_in(P, result):
                result.append(P)
    return result


def symmetric_sextic(u) -> TernaryForm:
    """
    q_u = a Σx_i⁴x_j² + b Σx_i⁴x_jx_k + c Σx_i³x_j³ + d Σx_i³x_j²x_k + e (x0x1x2)²

    mit a = u², b = −2(u²−2), c = 2u², d = −2(u²+2u+2), e = 6(u²+4u+2).
    """
    u = to_rational(u)
    a, b, c = u ** 2, -2 * (u ** 2 - 2), 2 * u ** 2
    d, e = -2 * (u ** 2 + 2 * u + 2), 6 * (u ** 2 + 4 * u + 2)
    terms: dict[tuple[int, int, int], Rational] = {}

    def add(exponents: dict[int, int], coeff):
        key = tuple(exponents.get(k, 0) for k in range(3))
        terms[key] = terms.get(key, 0) + coeff

    for i, j, k in permutations(range(3)):
        add({i: 4, j: 2}, a)
        add({i: 3, j: 2, k: 1}, d)
    for i, j, k in permutations(range(3)):
        if j < k:
            add({i: 4, j: 1, k: 1}, b)
    for i, j in combinations(range(3), 2):
        add({i: 3, j: 3}, c)
    add({0: 2, 1: 2, 2: 2}, e)
    return TernaryForm.from_terms(terms, 6)


# ---------------------------------------------------------------------------
# Hilfen für Checks
# ---------------------------------------------------------------------------

def _check(report: ExampleReport, name: str, passed: bool, detail: str = "") -> None:
    report.checks.append(ExampleCheck(name=name, passed=bool(passed), detail=detail))
    icon = "✅" if passed else "❌"
    logger.info(f"{icon} [{report.example_id}] {name} {detail}".rstrip())


def _close(value, expected: str) -> bool:
    return abs(Rational(str(float(value))) - to_rational(expected)) < TOLERANCE


def _approx(x) -> str:
    return x.to_real().approx(config.DISPLAY_PRECISION)


def _structural_checks(report: ExampleReport, S: list[ProjectivePoint]) -> None:
    _check(
        report,
        "dim I_3(S) = 1, dim I_6(2S) = 2",
        vanishing(S, 3).dimension == 1 and singular_at(S, 6).dimension == 2,
    )
    eight = True
    for P in S:
        T = [Q for Q in S if Q != P]
        sextics, squares = eight_point_cone_dimensions(T)
        eight = eight and vanishing(T, 3).dimension == 2 and sextics == 4 and squares == 3
    _check(report, "Acht-Punkt-Dimensionen (2, 4, 3) für alle Teilmengen", eight)


def _threshold_check(report: ExampleReport, result) -> None:
    largest = max(t.value for t in result.local_thresholds)
    _check(report, "s >= max t(P)", result.s.compare(largest) >= 0, f"max t(P) = {largest}")


# ---------------------------------------------------------------------------
# Die Beispiele
# ---------------------------------------------------------------------------

def check_elliptic_example(fixture: dict, report: ExampleReport) -> None:
    S = points_of(fixture["points"])
    certificate = check_admissible(S)
    _check(report, "zulässig", certificate.admissible, certificate.reason.value)
    f = parse_form(fixture["cubic"])
    _check(report, "Kubik stimmt", certificate.cubic.form.proportional(f))
    _check(report, "q liegt im Bleistift", in_span(parse_form(fixture["sextic"]), [f ** 2, certificate.pencil_generator]))
    _structural_checks(report, S)

    result = extreme_sextic(S, generator=fixture["sextic"])
    _threshold_check(report, result)
    _check(report, "zehnte Nullstelle", result.outcome is OutcomeKind.TENTH_ZERO, result.outcome.value)
    if result.outcome is not OutcomeKind.TENTH_ZERO:
        return
    x, y, _ = result.tenth_zero.coords
    alpha_minpoly = unipoly(fixture["alpha_minpoly"]).monic()
    _check(report, "α hat das erwartete Minimalpolynom", x.minimal_polynomial() == alpha_minpoly)
    _check(report, "zweite Koordinate ist 0", y.is_zero)
    identity = fixture["s_identity"]
    c2, c1, c0 = (to_rational(c) for c in identity["alpha_coeffs"])
    residual = result.s_exact * to_rational(identity["denominator"]) - (x * x * c2 + x * c1 + c0)
    _check(report, "49·s = 165α² + 60α + 1156 exakt", residual.is_zero)
    _check(report, "α ≈ 4.25925", _close(x.to_real(), fixture["alpha_approx"]), _approx(x))
    _check(report, "s ≈ 89.89509", _close(result.s, fixture["s_approx"]), result.s.approx(config.DISPLAY_PRECISION))
    if result.verified_above is not None:
        _check(report, "psd-Sandwich um s", result.verified_above and result.verified_below)


def check_triangle_example(fixture: dict, report: ExampleReport) -> None:
    S = points_of(fixture["points"])
    _check(report, "Produktkriterium auf dem Dreieck", triangle_criterion(S))
    certificate = check_admissible(S)
    _check(report, "zulässig", certificate.admissible, certificate.reason.value)
    f = parse_form(fixture["cubic"])
    _check(report, "q liegt im Bleistift", in_span(parse_form(fixture["sextic"]), [f ** 2, certificate.pencil_generator]))

    result = extreme_sextic(S, generator=fixture["sextic"])
    _threshold_check(report, result)
    _check(report, "s ≈ 114.68148", _close(result.s, fixture["s_approx"]), result.s.approx(config.DISPLAY_PRECISION))
    _check(report, "zehnte Nullstelle", result.outcome is OutcomeKind.TENTH_ZERO, result.outcome.value)
    if result.outcome is not OutcomeKind.TENTH_ZERO:
        return
    alpha, beta, _ = result.tenth_zero.coords
    minpoly = unipoly(fixture["alpha_minpoly"]).monic()
    _check(report, "α hat das erwartete Minimalpolynom", alpha.minimal_polynomial() == minpoly)
    smallest = isolate_real_roots(minpoly)[0]
    _check(report, "α ist die kleinste reelle Wurzel", alpha.to_real().compare(smallest) == 0)
    c0, c1, c2 = (to_rational(c) for c in fixture["beta_from_alpha"])
    _check(report, "β = 9/16·(1 − α²) + 2α exakt", (beta - (alpha * alpha * c2 + alpha * c1 + c0)).is_zero)
    _check(report, "α ≈ −0.64185", _close(alpha.to_real(), fixture["alpha_approx"]), _approx(alpha))
    _check(report, "β ≈ −0.95295", _close(beta.to_real(), fixture["beta_approx"]), _approx(beta))


def check_a3_example(fixture: dict, report: ExampleReport) -> None:
    S = points_of(fixture["points"])
    certificate = check_admissible(S)
    _check(report, "zulässig", certificate.admissible, certificate.reason.value)
    _check(report, "Kubik stimmt", certificate.cubic.form.proportional(parse_form(fixture["cubic"])))
    _structural_checks(report, S)

    result = extreme_sextic(S)
    _threshold_check(report, result)
    a3_point = ProjectivePoint.of(*fixture["a3_point"])
    _check(
        report,
        "A3-Singularität an (0:1:−1)",
        result.outcome is OutcomeKind.A3 and result.a3_point == a3_point,
        result.outcome.value,
    )
    q_s = result.rational_form()
    if q_s is None:
        _check(report, "s rational", False)
        return
    _check(report, "q_S wie angegeben (bis auf Skalar)", q_s.proportional(parse_form(fixture["extreme"])))
    _check(report, "q_S psd", verify_psd(q_s, known_zeros=S).psd)
    zeros = solve_forms(list(partials(q_s)), make_rng("zero-count", q_s), real_only=True).real_points
    _check(report, "genau 9 reelle Nullstellen", len(zeros) == fixture["real_zero_count"], f"{len(zeros)} gefunden")


def check_robinson_example(fixture: dict, report: ExampleReport) -> None:
    T = points_of(fixture["base_points"])
    R = parse_form(fixture["robinson"])
    nonic = coble_nonic(T)
    _check(report, "N_T wie angegeben (bis auf Skalar)", nonic.form.proportional(parse_form(fixture["nonic"])))
    _check(report, "Tripelpunkte in T", verify_triple_points(nonic))
    f, f_prime = parse_form(fixture["f"]), parse_form(fixture["f_prime"])
    basis = [f ** 2, f * f_prime, f_prime ** 2, R]
    _check(report, "I_6(2T) = span(f², ff', f'², R)", all(in_span(b, singular_at(T, 6).basis) for b in basis))

    for raw in fixture["u_values"]:
        u = to_rational(raw)
        S = T + [ProjectivePoint.of(1, u, 0)]
        certificate = check_admissible(S)
        _check(report, f"S_u zulässig (u = {u})", certificate.admissible, certificate.reason.value)
        if not certificate.admissible:
            continue
        _check(report, f"P_u auf N_T (u = {u})", ninth_zero_membership(S, S[-1]))
        expected = robinson_family_sextic(fixture, u)
        result = extreme_sextic(S)
        q_s = result.rational_form()
        _check(
            report,
            f"q_S = q_u bis auf positiven Skalar (u = {u})",
            q_s is not None and q_s.positive_multiple_of(expected),
        )
        _check(
            report,
            f"zehnte Nullstelle (1:−u:0) (u = {u})",
            result.outcome is OutcomeKind.TENTH_ZERO and same_point(result.tenth_zero, ProjectivePoint.of(1, -u, 0)),
        )
        if abs(u) == 1:
            _check(report, f"q_u = 3R (u = {u})", expected == R * 3)


def check_symmetric_example(fixture: dict, report: ExampleReport) -> None:
    for raw in fixture["admissible_u"]:
        S = symmetric_points(fixture, raw)
        certificate = check_admissible(S)
        _check(report, f"S_u zulässig (u = {raw})", certificate.admissible, certificate.reason.value)
    for raw in fixture["not_admissible_u"]:
        S = symmetric_points(fixture, raw)
        certificate = check_admissible(S)
        _check(report, f"S_u nicht zulässig (u = {raw})", not certificate.admissible, certificate.reason.value)

    tenth = ProjectivePoint.of(*fixture["tenth_point"])
    for raw in fixture["psd_u"] + fixture["not_psd_u"]:
        q_u = symmetric_sextic(raw)
        zeros = symmetric_points(fixture, raw) + [tenth]
        _check(report, f"q_u singulär in den zehn Punkten (u = {raw})", all(
            vanishes_at(d, P) for P in zeros for d in partials(q_u)
        ))
    for raw in fixture["psd_u"]:
        _check(report, f"q_u psd (u = {raw})", verify_psd(symmetric_sextic(raw)).psd)
    for raw in fixture["not_psd_u"]:
        _check(report, f"q_u nicht psd (u = {raw})", not verify_psd(symmetric_sextic(raw)).psd)

    raw = fixture["sos_u"]
    _check(
        report,
        f"q_u ∈ I_3(S_u)² (u = {raw})",
        sos_membership(symmetric_points(fixture, raw), symmetric_sextic(raw)),
    )

    raw = fixture["extreme_u"]
    result = extreme_sextic(symmetric_points(fixture, raw))
    q_s = result.rational_form()
    _check(
        report,
        f"q_S = q_u bis auf positiven Skalar (u = {raw})",
        q_s is not None and q_s.positive_multiple_of(symmetric_sextic(raw)),
    )


CHECKS: dict[str, Callable[[dict, ExampleReport], None]] = {
    "elliptic": check_elliptic_example,
    "triangle": check_triangle_example,
    "a3": check_a3_example,
    "robinson": check_robinson_example,
    "symmetric": check_symmetric_example,
}


# ---------------------------------------------------------------------------
# Öffentliche Einstiegspunkte
# ---------------------------------------------------------------------------

def list_examples(fixtures: Optional[dict] = None) -> list[tuple[str, str, str]]:
    """(Nummer, Kurzname, Titel) aller Beispiele."""
    fixtures = fixtures or load_fixtures()
    return [(entry["id"], entry["name"], entry["title"]) for entry in fixtures["examples"]]


def run_example(example_id: str, fixtures: Optional[dict] = None) -> ExampleReport:
    """
    Führt alle Checks eines Beispiels aus. Exceptions werden zu einem
    fehlgeschlagenen Check, damit die übrigen Beispiele weiterlaufen.
    """
    fixtures = fixtures or load_fixtures()
    fixture = _example(fixtures, example_id)
    example_id = fixture["id"]
    report = ExampleReport(example_id=example_id, title=fixture["title"])
    logger.info(f"🔍 Beispiel {example_id}: {fixture['title']}")
    try:
        CHECKS[fixture["name"]](fixture, report)
    except Exception as e:
        logger.error(f"❌ Beispiel {example_id} abgebrochen: {type(e).__name__}: {e}")
        _check(report, "ohne Exception", False, f"{type(e).__name__}: {e}")
    return report


def run_examples(only: Optional[list[str]] = None, fixtures: Optional[dict] = None) -> ExamplesRunReport:
    fixtures = fixtures or load_fixtures()
    ids = [example_id for example_id, _, _ in list_examples(fixtures)]
    if only:
        selected = {_example(fixtures, key)["id"] for key in only}
        ids = [i for i in ids if i in selected]
    reports = [run_example(example_id, fixtures) for example_id in ids]
    passed = all(r.passed for r in reports)
    logger.info(f"📊 {sum(r.passed for r in reports)}/{len(reports)} Beispiele bestanden")
    return ExamplesRunReport(examples=reports, passed=passed)
