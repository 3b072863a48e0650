from __future__ import annotations

import pytest
from sympy import Rational

from sextic.cubic_analysis import (
    classify_cubic,
    is_reduced,
    line_cubic_residual,
    local_quadratic_data,
    ninth_base_point,
    semidefinite_on_curve,
    singularity_kind,
    tangent_line,
    threshold_from_local_data,
)
from sextic.errors import InvalidInputError
from sextic.models import CubicType, CurveSign, SingularityType
from sextic.ternary_forms import ProjectivePoint, parse_form

ELLIPTIC = "y^2*z - x^3 - x^2*z - 4*z^3"
NODAL = "y^2*z - x^3 - x^2*z"
ORIGIN = ProjectivePoint.of(0, 0, 1)


@pytest.mark.parametrize(
    ("cubic", "expected"),
    [
        (ELLIPTIC, CubicType.NONSINGULAR),
        (NODAL, CubicType.NODAL_IRREDUCIBLE),
        ("x*(x^2 + y^2 - z^2)", CubicType.CONIC_PLUS_LINE),
        ("x0*x1*x2", CubicType.TRIANGLE),
        ("y^2*z - x^3 + x^2*z", CubicType.INADMISSIBLE_OTHER),
        ("y^2*z - x^3", CubicType.INADMISSIBLE_OTHER),
        ("z*(x^2 + y^2 - z^2)", CubicType.INADMISSIBLE_OTHER),
        ("x*y*(x - y)", CubicType.INADMISSIBLE_OTHER),
        ("x^2*y", CubicType.INADMISSIBLE_OTHER),
    ],
)
def test_classify_cubic(cubic: str, expected: CubicType, rng) -> None:
    result = classify_cubic(cubic, rng)
    assert result.type_tag is expected
    assert result.type_tag.admissible == (expected is not CubicType.INADMISSIBLE_OTHER)


def test_classification_reports_reason(rng) -> None:
    result = classify_cubic("x^2*y", rng)
    assert "mehrfache" in result.inadmissible_reason
    assert not is_reduced(parse_form("x^2*y"))
    assert is_reduced(parse_form("x0*x1*x2"))


def test_classify_cubic_rejects_other_degrees() -> None:
    with pytest.raises(InvalidInputError):
        classify_cubic("x^2 + y^2")


@pytest.mark.parametrize(
    ("cubic", "kind"),
    [
        (NODAL, SingularityType.NODE),
        ("y^2*z - x^3 + x^2*z", SingularityType.ACNODE),
        ("y^2*z - x^3", SingularityType.CUSP),
        ("x*y*(x - y)", SingularityType.HIGHER),
    ],
)
def test_singularity_kind_at_origin(cubic: str, kind: SingularityType) -> None:
    assert singularity_kind(parse_form(cubic), ORIGIN) is kind


def test_tangent_line_at_smooth_point() -> None:
    assert tangent_line(NODAL, ProjectivePoint.of(-1, 0, 1)) == parse_form("x + z")
    with pytest.raises(InvalidInputError):
        tangent_line(NODAL, ORIGIN)
    with pytest.raises(InvalidInputError):
        tangent_line(NODAL, ProjectivePoint.of(1, 1, 1))


def test_ninth_base_point_of_robinson_pencil(robinson_base) -> None:
    result = ninth_base_point("x^3 - x*z^2", "y^3 - y*z^2", robinson_base)
    assert result.point == ORIGIN
    assert not result.in_t


def test_ninth_base_point_requires_eight_points(robinson_base) -> None:
    with pytest.raises(InvalidInputError):
        ninth_base_point("x^3 - x*z^2", "y^3 - y*z^2", robinson_base[:7])


def test_line_cubic_residual() -> None:
    # y = 0 trifft y²z = x³ + x²z in (0:0:1) doppelt und in (−1:0:1)
    residual = line_cubic_residual(NODAL, "y", known=[ORIGIN, ORIGIN])
    assert residual == ProjectivePoint.of(-1, 0, 1)


def test_semidefinite_on_curve(rng) -> None:
    assert semidefinite_on_curve(ELLIPTIC, "z^2", rng) is CurveSign.NONNEGATIVE
    assert semidefinite_on_curve(ELLIPTIC, "x^2 - z^2", rng) is CurveSign.INDEFINITE
    assert semidefinite_on_curve(ELLIPTIC, "-x^2 - y^2", rng) is CurveSign.NONPOSITIVE
    divisible = parse_form(ELLIPTIC) * parse_form("x")
    assert semidefinite_on_curve(ELLIPTIC, divisible, rng) is CurveSign.IDENTICALLY_ZERO


def test_semidefinite_on_curve_needs_even_degree(rng) -> None:
    with pytest.raises(InvalidInputError):
        semidefinite_on_curve(ELLIPTIC, "x^3", rng)


def test_local_quadratic_data_on_conic() -> None:
    data = local_quadratic_data("x*z - y^2", "x^2 + 2*x*y + 3*y^2", ORIGIN)
    assert (data.a, data.b, data.c) == (1, 2, 3)
    assert threshold_from_local_data(data.a, data.b, data.c) == Rational(-2, 3)


def test_threshold_needs_positive_c() -> None:
    assert threshold_from_local_data(1, 2, 1) == 0
    with pytest.raises(InvalidInputError):
        threshold_from_local_data(1, 2, 0)
