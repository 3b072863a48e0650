from __future__ import annotations

import pytest
from sympy import Rational

from sextic.errors import InvalidInputError
from sextic.exact_arith import (
    NumberField,
    RealAlgebraicNumber,
    format_decimal,
    isolate_real_roots,
    rational_str,
    resultant,
    sample_points,
    sign_at,
    simplest_between,
    sturm_root_count,
    to_rational,
    unipoly,
)


def _sqrt2() -> RealAlgebraicNumber:
    return RealAlgebraicNumber.from_interval("X^2 - 2", 1, 2)


def test_to_rational_accepts_fraction_strings() -> None:
    assert to_rational("3/6") == Rational(1, 2)
    assert to_rational(" −2 ") == -2
    assert rational_str(Rational(-4, 6)) == "-2/3"


def test_to_rational_rejects_garbage() -> None:
    with pytest.raises(InvalidInputError):
        to_rational("abc")


def test_unipoly_coefficients_are_ascending() -> None:
    p = unipoly([1, 0, 3])
    assert p.all_coeffs() == [3, 0, 1]


def test_sturm_counts_distinct_real_roots() -> None:
    assert sturm_root_count(unipoly("(X - 1)^2*(X + 3)*(X^2 + 1)")) == 2


def test_isolate_real_roots_sorted_and_exact() -> None:
    roots = isolate_real_roots("X^3 - 2*X")
    assert [r.approx(4) for r in roots] == ["-1.4142", "0.0000", "1.4142"]
    assert roots[1].is_rational
    assert roots[1].rational_value == 0


def test_isolate_real_roots_of_zero_polynomial_raises() -> None:
    with pytest.raises(InvalidInputError):
        isolate_real_roots([0])


def test_from_interval_requires_single_root() -> None:
    with pytest.raises(InvalidInputError):
        RealAlgebraicNumber.from_interval("X^2 - 2", -2, 2)


def test_compare_and_arithmetic_stay_exact() -> None:
    s = _sqrt2()
    assert s.compare(Rational(141, 100)) == 1
    assert s.compare(Rational(142, 100)) == -1
    assert s * s == 2
    assert (s - s).sign() == 0
    assert -s < 0


def test_refine_shrinks_interval_around_root() -> None:
    refined = _sqrt2().refine(Rational(1, 1000))
    assert refined.width <= Rational(1, 1000)
    assert refined.lo ** 2 <= 2 <= refined.hi ** 2


def test_format_decimal_rounds_half_up() -> None:
    assert format_decimal(Rational(5, 2), 0) == "3"
    assert format_decimal(Rational(-1, 3), 3) == "-0.333"
    assert format_decimal(Rational(1, 8), 2) == "0.13"


def test_simplest_between_and_samples() -> None:
    assert simplest_between(Rational(1, 3), Rational(3, 4)) == Rational(1, 2)
    roots = isolate_real_roots("X^2 - 1")
    samples = sample_points(roots)
    assert len(samples) == 3
    assert samples[0] < -1 < samples[1] < 1 < samples[2]


def test_number_field_inverse_and_minimal_polynomial() -> None:
    K = NumberField.from_root(_sqrt2())
    theta = K.generator()
    assert theta * theta == 2
    assert (theta + 1) * (theta + 1).inverse() == 1
    assert (theta + 1).minimal_polynomial() == unipoly("X^2 - 2*X - 1")
    assert (theta + 1).to_real().approx(3) == "2.414"
    assert (-theta).sign() == -1


def test_rational_number_field_is_q() -> None:
    K = NumberField.from_root(RealAlgebraicNumber.from_rational(5))
    assert K.is_rational
    assert K.element(Rational(3, 2)).rational_value == Rational(3, 2)


# ---------------------------------------------------------------------------
# Resultanten und Vorzeichen
# ---------------------------------------------------------------------------

def test_resultant() -> None:
    assert resultant(unipoly("X^2 - 2"), unipoly("X^2 - 3")) == 1
    p = unipoly("X^3 - X + 5")
    assert resultant(p, p) == 0
    with pytest.raises(InvalidInputError):
        resultant(unipoly([0]), p)


def test_sign_at_irrational_root() -> None:
    roots = isolate_real_roots("5*X^3 - 15*X^2 - 24*X - 12")
    assert len(roots) == 1
    alpha = roots[0]
    assert sign_at("X - 4", alpha) == 1
    assert sign_at("X - 5", alpha) == -1
    assert sign_at(alpha.defining, alpha) == 0
    assert sign_at("X^2 + 1", _sqrt2()) == 1
    assert sign_at("2*X^2 - 4", _sqrt2()) == 0
