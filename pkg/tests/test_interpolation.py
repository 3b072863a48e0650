from __future__ import annotations

import pytest

from sextic.errors import InvalidInputError, NotAdmissibleError
from sextic.interpolation import (
    check_general_position,
    eight_point_cone_dimensions,
    in_span,
    linear_system,
    pencil_coordinates,
    pencil_second_generator,
    products,
    reference_generator,
    singular_at,
    sos_membership,
    vanishing,
)
from sextic.ternary_forms import ProjectivePoint, is_singular_at, parse_form, vanishes_at

F = "x^3 - x*z^2"
F_PRIME = "y^3 - y*z^2"
MIXED = "(x^2 - z^2)*(y^2 - z^2)*(x^2 + y^2 - z^2)"


def test_cubics_through_robinson_base(robinson_base) -> None:
    cubics = vanishing(robinson_base, 3)
    assert cubics.dimension == 2
    assert in_span(parse_form(F), cubics.basis)
    assert in_span(parse_form(F_PRIME), cubics.basis)
    for g in cubics.basis:
        assert all(vanishes_at(g, P) for P in robinson_base)


def test_sextics_singular_at_robinson_base(robinson_base, robinson) -> None:
    sextics = singular_at(robinson_base, 6)
    assert sextics.dimension == 4
    assert in_span(robinson, sextics.basis)
    assert in_span(parse_form(MIXED), sextics.basis)
    for g in sextics.basis:
        assert all(is_singular_at(g, P) for P in robinson_base)


def test_cone_dimensions_for_eight_points(robinson_base) -> None:
    assert eight_point_cone_dimensions(robinson_base) == (4, 3)


def test_sos_membership_uses_squares_of_cubics(robinson_base, robinson) -> None:
    f, f_prime = parse_form(F), parse_form(F_PRIME)
    assert sos_membership(robinson_base, f ** 2 + f_prime ** 2)
    assert not sos_membership(robinson_base, robinson)


def test_products_of_basis() -> None:
    a, b = parse_form("x"), parse_form("y")
    assert len(products([a, b])) == 3
    assert not in_span(parse_form("x^2 + z^2"), products([a, b]))


def test_linear_system_rejects_bad_constraints() -> None:
    P = ProjectivePoint.of(1, 0, 0)
    with pytest.raises(InvalidInputError):
        linear_system(3, [(P, 1), (ProjectivePoint.of(2, 0, 0), 2)])
    with pytest.raises(InvalidInputError):
        linear_system(3, [(P, 3)])
    with pytest.raises(InvalidInputError):
        linear_system(0, [(P, 1)])


def test_general_position_rejects_four_collinear(robinson_base) -> None:
    check_general_position(robinson_base)
    collinear = robinson_base[:7] + [ProjectivePoint.of(1, 2, 1)]
    with pytest.raises(InvalidInputError, match="Geraden"):
        check_general_position(collinear)


def test_general_position_rejects_seven_on_a_conic() -> None:
    circle = [(1, 0, 1), (-1, 0, 1), (0, 1, 1), (0, -1, 1), (3, 4, 5), (-3, 4, 5), (3, -4, 5)]
    T = [ProjectivePoint.of(*P) for P in circle] + [ProjectivePoint.of(2, 3, 1)]
    with pytest.raises(InvalidInputError, match="Kegelschnitt"):
        check_general_position(T)


def test_pencil_second_generator_for_triangle_set(triangle_nine) -> None:
    f = parse_form("x0*x1*x2")
    q = pencil_second_generator(triangle_nine, f)
    assert q.degree == 6
    assert not q.proportional(f ** 2)
    assert all(is_singular_at(q, P) for P in triangle_nine)


def test_pencil_second_generator_needs_dimension_two(robinson_base) -> None:
    with pytest.raises(NotAdmissibleError):
        pencil_second_generator(robinson_base, parse_form(F))


def test_pencil_coordinates_and_reference_generator(triangle_nine) -> None:
    f = parse_form("x*y*z")
    q = pencil_second_generator(triangle_nine, f)
    g = q * 2 + f ** 2 * 3
    assert pencil_coordinates(g, f, q) == (2, 3)
    assert reference_generator(g, f, q) == g
    assert reference_generator(-g, f, q) == g
    with pytest.raises(InvalidInputError):
        reference_generator(f ** 2 * 5, f, q)
    with pytest.raises(InvalidInputError):
        pencil_coordinates(parse_form("x^6"), f, q)
