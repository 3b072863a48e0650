from __future__ import annotations

import pytest

from sextic.errors import InconsistencyError, InvalidInputError, NotAdmissibleError
from sextic.extreme_pencil import (
    certify_nonnegative_samples,
    exceptional_set,
    local_psd_bump,
    local_threshold,
    not_sos_certificate,
    verify_psd,
)
from sextic.examples import symmetric_points
from sextic.graph import check_admissible, extreme_sextic
from sextic.models import OutcomeKind
from sextic.ternary_forms import ProjectivePoint, evaluate, is_singular_at, parse_form, vanishes_at

MOTZKIN = "x^4*y^2 + x^2*y^4 - 3*x^2*y^2*z^2 + z^6"
CONIC = "x*z - y^2"
ORIGIN = ProjectivePoint.of(0, 0, 1)


# ---------------------------------------------------------------------------
# psd-Test
# ---------------------------------------------------------------------------

def test_robinson_is_psd_with_ten_zeros(robinson, robinson_ten, rng) -> None:
    verdict = verify_psd(robinson, known_zeros=robinson_ten, rng=rng)
    assert verdict.psd
    assert verdict.zeros_confirmed
    assert verdict.witness is None


def test_motzkin_is_psd(rng) -> None:
    assert verify_psd(MOTZKIN, rng=rng).psd


@pytest.mark.parametrize("form", ["x^2 - y^2", "x^2*y^2 - z^4", "-x^2 - y^2 - z^2"])
def test_indefinite_forms_come_with_a_witness(form: str, rng) -> None:
    verdict = verify_psd(form, rng=rng)
    assert not verdict.psd
    assert verdict.witness_value < 0
    assert evaluate(parse_form(form), verdict.witness) == verdict.witness_value


def test_odd_degree_is_never_psd(rng) -> None:
    verdict = verify_psd("x^3 + y^3", rng=rng)
    assert not verdict.psd
    assert verdict.witness is None


def test_constant_and_zero_forms() -> None:
    assert verify_psd("5").psd
    with pytest.raises(InvalidInputError):
        verify_psd("0")


def test_known_zeros_are_checked(robinson, rng) -> None:
    verdict = verify_psd(robinson, known_zeros=[ORIGIN], rng=rng)
    assert verdict.psd
    assert verdict.zeros_confirmed is False


# ---------------------------------------------------------------------------
# Lokale Schwellen
# ---------------------------------------------------------------------------

def test_local_threshold_requires_positive_c() -> None:
    with pytest.raises(InconsistencyError):
        local_threshold(CONIC, "x^2", ORIGIN)


def test_local_psd_bump_doubles_until_definite() -> None:
    assert local_psd_bump(CONIC, "-x^2 + 2*x*y + 3*y^2", ORIGIN) == 2
    assert local_psd_bump(CONIC, "x^2 + 3*y^2", ORIGIN) == 1


def test_local_psd_bump_fails_without_transversal_part() -> None:
    with pytest.raises(InvalidInputError):
        local_psd_bump(CONIC, "x^2", ORIGIN)


# ---------------------------------------------------------------------------
# Extreme Sextik
# ---------------------------------------------------------------------------

def test_not_sos_certificate(triangle_nine) -> None:
    certificate = check_admissible(triangle_nine)
    f = certificate.cubic.form
    assert not_sos_certificate(triangle_nine, certificate.pencil_generator)
    assert not not_sos_certificate(triangle_nine, f ** 2)


def test_extreme_sextic_refuses_inadmissible_sets(fixtures) -> None:
    fixture = next(e for e in fixtures["examples"] if e["name"] == "symmetric")
    with pytest.raises(NotAdmissibleError) as info:
        extreme_sextic(symmetric_points(fixture, -2))
    assert info.value.certificate is not None
    assert not info.value.certificate.admissible


def _triangle_generator(fixtures) -> str:
    return next(e for e in fixtures["examples"] if e["name"] == "triangle")["sextic"]


def test_generator_outside_the_pencil_is_rejected(triangle_nine) -> None:
    with pytest.raises(InvalidInputError):
        extreme_sextic(triangle_nine, generator="x^6")
    f = check_admissible(triangle_nine).cubic.form
    with pytest.raises(InvalidInputError):
        extreme_sextic(triangle_nine, generator=f ** 2)


@pytest.mark.slow
def test_triangle_set_has_tenth_zero(triangle_nine, fixtures) -> None:
    result = extreme_sextic(triangle_nine, generator=_triangle_generator(fixtures))
    assert result.outcome is OutcomeKind.TENTH_ZERO
    assert abs(float(result.s) - 114.68148) < 1e-4
    alpha, beta, _ = result.tenth_zero.real_coords()
    assert abs(float(alpha) + 0.64185) < 1e-4
    assert abs(float(beta) + 0.95295) < 1e-4
    assert result.verified_above is not False
    assert result.verified_below is not False
    assert all(result.s.compare(t.value) >= 0 for t in result.local_thresholds)


@pytest.mark.slow
def test_generator_shifts_s_by_its_square_coefficient(triangle_nine) -> None:
    certificate = check_admissible(triangle_nine)
    shifted = certificate.pencil_generator + certificate.cubic.form ** 2 * 7
    reduced = extreme_sextic(triangle_nine)
    result = extreme_sextic(triangle_nine, generator=shifted)
    assert result.q == shifted
    assert abs(float(result.s) - float(reduced.s) + 7) < 1e-9
    assert not_sos_certificate(triangle_nine, result)


@pytest.mark.slow
def test_a3_example(fixtures) -> None:
    fixture = next(e for e in fixtures["examples"] if e["name"] == "a3")
    points = [ProjectivePoint.of(*row) for row in fixture["points"]]
    result = extreme_sextic(points)
    assert result.outcome is OutcomeKind.A3
    assert result.a3_point == ProjectivePoint.of(0, 1, -1)
    q_s = result.rational_form()
    assert q_s is not None
    assert q_s.proportional(parse_form(fixture["extreme"]))
    assert not_sos_certificate(points, result)
    assert all(is_singular_at(q_s, P) for P in points)
    assert vanishes_at(q_s, result.a3_point)


@pytest.mark.slow
def test_sampled_certificate_on_triangle_set(triangle_nine) -> None:
    result = extreme_sextic(triangle_nine)
    certificate = certify_nonnegative_samples(result, count=500)
    assert certificate.passed
    assert certificate.checked == 500


@pytest.mark.slow
def test_exceptional_set_tops_out_at_s(triangle_nine) -> None:
    result = extreme_sextic(triangle_nine)
    values = exceptional_set(result.f, result.q, triangle_nine)
    assert len(values) == len(result.exceptional_set)
    assert values[-1].compare(result.s) == 0
