from __future__ import annotations

import random

import pytest
from sympy import Matrix, Rational

from sextic.errors import InvalidInputError
from sextic.ternary_forms import (
    ProjectivePoint,
    TernaryForm,
    apply_projectivity,
    as_form,
    collinear,
    evaluate,
    form_gcd,
    hessian_matrix,
    is_singular_at,
    jacobian_det,
    line_intersection,
    line_through,
    map_point,
    monomials,
    parse_form,
    partials,
    random_projectivity,
    same_point,
    vanishes_at,
)


def test_parse_form_accepts_variable_aliases() -> None:
    f = parse_form("3/2*x^2*y - z^3")
    g = parse_form("3/2*x0^2*x1 - x2^3")
    assert f == g
    assert f.degree == 3


@pytest.mark.parametrize("text", ["x^2 + y", "x*w", "x +* y"])
def test_parse_form_rejects_bad_input(text: str) -> None:
    with pytest.raises(InvalidInputError):
        parse_form(text)


def test_text_and_json_round_trip() -> None:
    f = parse_form("-x0^3 + 2/3*x0*x1*x2 - x2^3")
    assert f.to_text() == "-x0^3 + 2/3*x0*x1*x2 - x2^3"
    assert TernaryForm.from_json(f.to_json()) == f
    assert as_form(f.to_json()) == f


def test_from_json_reports_broken_documents() -> None:
    with pytest.raises(InvalidInputError):
        TernaryForm.from_json({"degree": 2, "terms": [{"e": [1, 1]}]})


def test_canonical_and_proportionality() -> None:
    f = parse_form("-2/3*x^2 + 4/3*y*z")
    assert f.canonical() == parse_form("x^2 - 2*y*z")
    assert f.proportional(parse_form("x^2 - 2*y*z"))
    assert f.ratio_to(parse_form("x^2 - 2*y*z")) == Rational(-2, 3)
    assert not f.positive_multiple_of(parse_form("x^2 - 2*y*z"))
    assert (f * -3).positive_multiple_of(parse_form("x^2 - 2*y*z"))


def test_mixed_degrees_cannot_be_added() -> None:
    with pytest.raises(InvalidInputError):
        parse_form("x^2") + parse_form("y")


def test_exquo_and_gcd() -> None:
    l = parse_form("x - y")
    f = l * parse_form("x^2 + z^2")
    assert f.exquo(l) == parse_form("x^2 + z^2")
    assert f.exquo(parse_form("x + y")) is None
    assert form_gcd(f, l * parse_form("y + z")) == l.canonical()
    assert form_gcd(parse_form("x"), parse_form("y")).degree == 0


def test_projective_points_are_normalized() -> None:
    assert ProjectivePoint.of(2, 4, 2) == ProjectivePoint.of(1, 2, 1)
    assert ProjectivePoint.of(3, -6, 0) == ProjectivePoint.of("-1/2", 1, 0)
    assert same_point(ProjectivePoint.of(0, 0, 5), ProjectivePoint.of(0, 0, 1))
    with pytest.raises(InvalidInputError):
        ProjectivePoint.of(0, 0, 0)


def test_evaluation_and_singularity(robinson) -> None:
    P = ProjectivePoint.of(1, 1, 1)
    assert vanishes_at(robinson, P)
    assert is_singular_at(robinson, P)
    assert evaluate(robinson, ProjectivePoint.of(0, 0, 1)) == 1
    assert not is_singular_at(parse_form("x^2 + y^2 - z^2"), ProjectivePoint.of(1, 0, 1))


def test_lines_and_collinearity() -> None:
    p, q = ProjectivePoint.of(1, 0, 1), ProjectivePoint.of(0, 1, 1)
    l = line_through(p, q)
    assert vanishes_at(l, p) and vanishes_at(l, q)
    assert line_intersection(l, parse_form("x - y")) == ProjectivePoint.of(1, 1, 2)
    assert collinear([p, q, ProjectivePoint.of(1, -1, 0)])
    assert not collinear([p, q, ProjectivePoint.of(1, 1, 1)])
    with pytest.raises(InvalidInputError):
        line_through(p, ProjectivePoint.of(2, 0, 2))


def test_projectivity_maps_zeros_to_zeros() -> None:
    f = parse_form("x^2 + y^2 - z^2")
    T = Matrix([[1, 2, 0], [0, 1, 1], [1, 0, 3]])
    g = apply_projectivity(f, T)
    P = ProjectivePoint.of(1, 0, 1)
    # Q mit T·Q = P liegt auf V(f∘T)
    Q = map_point(T.inv(), P)
    assert vanishes_at(g, Q)
    assert map_point(T, Q) == P


def test_projectivity_range_doubles_per_attempt() -> None:
    rng = random.Random(7)
    for attempt, bound in ((1, 3), (2, 6), (4, 24)):
        draws = [random_projectivity(rng, attempt) for _ in range(20)]
        entries = [abs(e) for m in draws for e in m]
        assert max(entries) <= bound
        assert all(m.det() != 0 for m in draws)
    assert max(entries) > 12


def test_jacobian_and_hessian_degrees() -> None:
    f, g, h = parse_form("x^3 - x*z^2"), parse_form("y^3 - y*z^2"), parse_form("x^2*y^2*z^2")
    j = jacobian_det(f, g, h)
    assert j.degree == 9
    H = hessian_matrix(f)
    assert all(entry.degree == 1 or entry.is_zero for row in H for entry in row)


def test_monomials_cover_all_exponents() -> None:
    assert len(monomials(6)) == 28
    assert monomials(1) == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]


def test_partials() -> None:
    dx, dy, dz = partials(parse_form("x^2*y + z^3"))
    assert dx == parse_form("2*x*y")
    assert dy == parse_form("x^2")
    assert dz == parse_form("3*z^2")
    assert all(d.is_zero and d.degree == 0 for d in partials(parse_form("5")))
