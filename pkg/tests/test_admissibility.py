from __future__ import annotations

import pytest
from sympy import Rational

from sextic.admissibility import (
    is_copacetic,
    ninth_point_for_eight,
    rational_point_set,
    tangent_criterion,
    triangle_collinear,
    triangle_criterion,
    triangle_parameters,
    triangle_point,
)
from sextic.errors import InvalidInputError
from sextic.examples import symmetric_points
from sextic.graph import check_admissible
from sextic.models import AdmissibilityReason, CubicType
from sextic.ternary_forms import ProjectivePoint, is_singular_at, parse_form


def _symmetric(fixtures, u) -> list[ProjectivePoint]:
    fixture = next(e for e in fixtures["examples"] if e["name"] == "symmetric")
    return symmetric_points(fixture, u)


# ---------------------------------------------------------------------------
# Dreiecke
# ---------------------------------------------------------------------------

def test_triangle_parameters(triangle_nine) -> None:
    parameters = triangle_parameters(triangle_nine)
    assert parameters[:3] == [(0, 1), (0, -1), (0, Rational(3, 2))]
    assert parameters[-1] == (2, -2)
    assert triangle_point(2, -2) == ProjectivePoint.of(-2, 1, 0)


def test_triangle_criterion(triangle_nine) -> None:
    assert triangle_criterion(triangle_nine)
    moved = triangle_nine[:8] + [ProjectivePoint.of(-3, 1, 0)]
    assert not triangle_criterion(moved)


def test_triangle_criterion_rejects_vertices(triangle_nine) -> None:
    with pytest.raises(InvalidInputError):
        triangle_criterion(triangle_nine[:8] + [ProjectivePoint.of(1, 0, 0)])


def test_triangle_collinearity_is_product_minus_one() -> None:
    assert triangle_collinear([(0, 1, -1), (1, 0, 1), (1, 1, 0)])
    assert not triangle_collinear([(0, 1, 1), (1, 0, 1), (1, 1, 0)])


# ---------------------------------------------------------------------------
# Zulässigkeit
# ---------------------------------------------------------------------------

def test_triangle_set_is_admissible(triangle_nine) -> None:
    certificate = check_admissible(triangle_nine)
    assert certificate.admissible
    assert certificate.reason is AdmissibilityReason.OK
    assert certificate.cubic.type_tag is CubicType.TRIANGLE
    assert certificate.cubic.form.proportional(parse_form("x0*x1*x2"))
    q = certificate.pencil_generator
    assert all(is_singular_at(q, P) for P in triangle_nine)


def test_wrong_point_count_is_invalid(triangle_nine) -> None:
    with pytest.raises(InvalidInputError):
        check_admissible(triangle_nine[:8])


def test_duplicate_points_are_invalid(triangle_nine) -> None:
    points = triangle_nine[:8] + [ProjectivePoint.of(0, 2, 2)]
    with pytest.raises(InvalidInputError):
        check_admissible(points)


def test_no_unique_cubic(fixtures) -> None:
    certificate = check_admissible(_symmetric(fixtures, -2))
    assert not certificate.admissible
    assert certificate.reason is AdmissibilityReason.NO_UNIQUE_CUBIC


def test_point_singular_on_triangle(fixtures) -> None:
    certificate = check_admissible(_symmetric(fixtures, 0))
    assert not certificate.admissible
    assert certificate.reason is AdmissibilityReason.POINT_SINGULAR_ON_CUBIC


@pytest.mark.slow
@pytest.mark.parametrize("u", ["-1", "-1/2", "1/2"])
def test_symmetric_family_not_admissible(fixtures, u: str) -> None:
    assert not check_admissible(_symmetric(fixtures, u)).admissible


@pytest.mark.slow
@pytest.mark.parametrize("u", ["-3", "2", "3"])
def test_symmetric_family_admissible(fixtures, u: str) -> None:
    certificate = check_admissible(_symmetric(fixtures, u))
    assert certificate.admissible
    assert certificate.cubic.type_tag.admissible


def test_seed_does_not_change_the_decision(triangle_nine) -> None:
    assert check_admissible(triangle_nine, seed=1).admissible
    assert check_admissible(triangle_nine, seed=99).admissible


# ---------------------------------------------------------------------------
# Acht Punkte
# ---------------------------------------------------------------------------

def test_ninth_point_on_triangle(triangle_nine) -> None:
    outcome = ninth_point_for_eight(triangle_nine[:8], cubic="x0*x1*x2")
    assert outcome.found
    assert outcome.point == ProjectivePoint.of(-2, 1, 0)
    assert not outcome.in_t
    assert outcome.cubic_type is CubicType.TRIANGLE


def test_ninth_point_rejects_foreign_cubic(triangle_nine) -> None:
    with pytest.raises(InvalidInputError):
        ninth_point_for_eight(triangle_nine[:8], cubic="x0^3 + x1^3 + x2^3")


def test_robinson_base_is_copacetic(robinson_base) -> None:
    assert is_copacetic(robinson_base)


def test_rational_point_set_checks_count_and_duplicates(robinson_base) -> None:
    assert len(rational_point_set(robinson_base, 8)) == 8
    with pytest.raises(InvalidInputError):
        rational_point_set(robinson_base, 9)
    with pytest.raises(InvalidInputError):
        rational_point_set(robinson_base + [robinson_base[0]])


@pytest.mark.slow
def test_tangent_criterion_agrees_with_admissibility(fixtures) -> None:
    S = _symmetric(fixtures, 3)
    assert tangent_criterion(S, ProjectivePoint.of(1, 0, 0))
    S_half = _symmetric(fixtures, "1/2")
    assert not tangent_criterion(S_half, ProjectivePoint.of(1, 0, 0))
