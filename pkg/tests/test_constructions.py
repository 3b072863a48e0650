from __future__ import annotations

import pytest
from sympy import Rational

from sextic.constructions import check_ten_point_set, psd_nonsos_through_eight, smallest_psd_multiplier
from sextic.errors import InvalidInputError
from sextic.extreme_pencil import verify_psd
from sextic.interpolation import sos_membership
from sextic.ternary_forms import ProjectivePoint, parse_form, vanishes_at


# t·x² − 2xy + y² + z² ist genau für t ≥ 1 psd
def _shifted(t):
    return parse_form("x^2") * t + parse_form("-2*x*y + y^2 + z^2")


@pytest.mark.parametrize("start", [Rational(1), Rational(1, 8)])
def test_smallest_psd_multiplier(start, rng) -> None:
    t = smallest_psd_multiplier(_shifted, rng, start=start)
    assert t == 1
    assert verify_psd(_shifted(t), rng=rng).psd


def test_ten_points_with_four_collinear() -> None:
    U = [ProjectivePoint.of(k, 0, 1) for k in range(4)] + [
        ProjectivePoint.of(0, 1, 1),
        ProjectivePoint.of(1, 2, 1),
        ProjectivePoint.of(2, 5, 1),
        ProjectivePoint.of(3, 1, 1),
        ProjectivePoint.of(1, 7, 1),
        ProjectivePoint.of(5, 3, 1),
    ]
    outcome = check_ten_point_set(U)
    assert not outcome.possible
    assert "Vier Punkte auf einer Geraden" in outcome.reason


def test_ten_point_set_needs_ten_points(robinson_base) -> None:
    with pytest.raises(InvalidInputError):
        check_ten_point_set(robinson_base)


@pytest.mark.slow
def test_robinson_ten_points(robinson_ten, robinson) -> None:
    outcome = check_ten_point_set(robinson_ten)
    assert outcome.possible
    assert outcome.form.proportional(robinson)
    assert all(vanishes_at(outcome.form, P) for P in robinson_ten)


@pytest.mark.slow
def test_psd_nonsos_through_robinson_base(robinson_base, rng) -> None:
    sextic = psd_nonsos_through_eight(robinson_base)
    assert all(vanishes_at(sextic.form, P) for P in robinson_base)
    assert verify_psd(sextic.form, rng=rng).psd
    assert not sos_membership(robinson_base, sextic.form)
