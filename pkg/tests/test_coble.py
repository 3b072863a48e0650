from __future__ import annotations

import pytest

from sextic.coble import (
    coble_nonic,
    ninth_base_point_off_nonic,
    ninth_zero_membership,
    tenth_zero_candidates,
    verify_triple_points,
)
from sextic.errors import InvalidInputError
from sextic.models import CobleNonic
from sextic.ternary_forms import ProjectivePoint, parse_form, point_in, vanishes_at

NONIC = "z*(z^2 - x^2)*(z^2 - y^2)*(x^2 + x*y + y^2 - z^2)*(x^2 - x*y + y^2 - z^2)"
MIXED = "(x^2 - z^2)*(y^2 - z^2)*(x^2 + y^2 - z^2)"


def test_robinson_nonic(robinson_base) -> None:
    nonic = coble_nonic(robinson_base)
    assert nonic.form.degree == 9
    assert nonic.form.proportional(parse_form(NONIC))
    assert verify_triple_points(nonic)


def test_nonic_does_not_depend_on_g(robinson_base, robinson) -> None:
    default = coble_nonic(robinson_base).form
    assert coble_nonic(robinson_base, g=MIXED).form.proportional(default)
    assert coble_nonic(robinson_base, g=robinson).form.proportional(default)


def test_nonic_rejects_unsuitable_g(robinson_base) -> None:
    f = parse_form("x^3 - x*z^2")
    with pytest.raises(InvalidInputError):
        coble_nonic(robinson_base, g=f ** 2)
    with pytest.raises(InvalidInputError):
        coble_nonic(robinson_base, g="x^6")


def test_nonic_needs_eight_points_in_general_position(robinson_base) -> None:
    with pytest.raises(InvalidInputError):
        coble_nonic(robinson_base[:7])
    with pytest.raises(InvalidInputError):
        coble_nonic(robinson_base[:7] + [ProjectivePoint.of(1, 2, 1)])


def test_triple_point_check_detects_ordinary_points(robinson_base) -> None:
    f = parse_form("x^3 - x*z^2")
    fake = CobleNonic(points=robinson_base, form=parse_form("x^9 + y^9 - z^9"), basis_used=(f, f, f))
    assert not verify_triple_points(fake)
    cube = CobleNonic(points=robinson_base, form=f ** 3, basis_used=(f, f, f))
    assert verify_triple_points(cube)


def test_ninth_base_point_is_off_the_nonic(robinson_base) -> None:
    assert ninth_base_point_off_nonic(robinson_base)


def test_ninth_zero_membership_for_triangle_set(triangle_nine) -> None:
    assert ninth_zero_membership(triangle_nine, ProjectivePoint.of(-2, 1, 0))
    with pytest.raises(InvalidInputError):
        ninth_zero_membership(triangle_nine, ProjectivePoint.of(5, 1, 0))


def test_tenth_zero_candidates_validate_pair(robinson_base) -> None:
    S = robinson_base + [ProjectivePoint.of(1, 2, 0)]
    with pytest.raises(InvalidInputError):
        tenth_zero_candidates(S, S[0], S[0])
    with pytest.raises(InvalidInputError):
        tenth_zero_candidates(S, S[0], ProjectivePoint.of(3, 1, 0))


@pytest.mark.slow
def test_tenth_zero_lies_on_both_nonics(robinson_base) -> None:
    S = robinson_base + [ProjectivePoint.of(1, 2, 0)]
    tenth = ProjectivePoint.of(1, -2, 0)
    candidates = tenth_zero_candidates(S, S[-1], S[0])
    shared = candidates.shared_component
    assert point_in(tenth, candidates.points) or (shared is not None and vanishes_at(shared, tenth))
    assert not any(point_in(p, S) for p in candidates.points)
