from __future__ import annotations

import pytest

from sextic.elimination import solve_forms
from sextic.errors import InvalidInputError
from sextic.ternary_forms import AlgebraicPoint, ProjectivePoint, parse_form, point_in, vanishes_at


def test_rational_intersections(rng) -> None:
    result = solve_forms([parse_form("x^2 + y^2 - 2*z^2"), parse_form("x - y")], rng)
    assert result.nonreal_count == 0
    assert len(result.real_points) == 2
    assert point_in(ProjectivePoint.of(1, 1, 1), result.real_points)
    assert point_in(ProjectivePoint.of(-1, -1, 1), result.real_points)


def test_nonreal_intersections_are_counted(rng) -> None:
    result = solve_forms([parse_form("x^2 + y^2 - z^2"), parse_form("z")], rng)
    assert result.real_points == []
    assert result.nonreal_count == 2


def test_real_only_skips_nonreal_factors(rng) -> None:
    result = solve_forms([parse_form("x^2 + y^2 - z^2"), parse_form("z")], rng, real_only=True)
    assert result.real_points == []
    assert result.nonreal_count is None


def test_irrational_points_carry_a_number_field(rng) -> None:
    f = parse_form("x^2 - 2*z^2")
    result = solve_forms([f, parse_form("y")], rng)
    assert len(result.real_points) == 2
    for P in result.real_points:
        assert isinstance(P, AlgebraicPoint)
        assert not P.is_rational
        assert vanishes_at(f, P)
    signs = sorted(P.real_coords()[0].sign() for P in result.real_points)
    assert signs == [-1, 1]


def test_three_forms_share_only_their_common_zeros(rng) -> None:
    forms = [parse_form("x*y"), parse_form("y*z"), parse_form("x*z")]
    result = solve_forms(forms, rng)
    assert len(result.real_points) == 3
    for P in ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
        assert point_in(ProjectivePoint.of(*P), result.real_points)


def test_common_component_is_rejected(rng) -> None:
    with pytest.raises(InvalidInputError):
        solve_forms([parse_form("x*y"), parse_form("x*z")], rng)


def test_single_form_is_rejected(rng) -> None:
    with pytest.raises(InvalidInputError):
        solve_forms([parse_form("x*y")], rng)


def test_grid_points_with_small_coordinates(rng) -> None:
    # neun Punkte im Gitter {-1, 0, 1}², viele Kollisionen bei kleinen Projektivitäten
    result = solve_forms([parse_form("x^3 - x*z^2"), parse_form("y^3 - y*z^2")], rng)
    assert result.nonreal_count == 0
    assert len(result.real_points) == 9
    for a in (-1, 0, 1):
        for b in (-1, 0, 1):
            assert point_in(ProjectivePoint.of(a, b, 1), result.real_points)
