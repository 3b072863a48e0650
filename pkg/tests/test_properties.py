from __future__ import annotations

import random

import pytest

from sextic.admissibility import ninth_point_for_eight
from sextic.coble import ninth_zero_membership
from sextic.graph import check_admissible
from sextic.models import CubicType
from sextic.ternary_forms import map_point, random_projectivity

TRIANGLE_CUBIC = "x0*x1*x2"


# ---------------------------------------------------------------------------
# Eindeutigkeit des neunten Punkts
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("index", range(9))
def test_ninth_point_recovers_deleted_point(triangle_nine, index: int) -> None:
    deleted = triangle_nine[index]
    T = triangle_nine[:index] + triangle_nine[index + 1:]
    outcome = ninth_point_for_eight(T, cubic=TRIANGLE_CUBIC)
    assert outcome.found
    assert outcome.point == deleted


@pytest.mark.slow
@pytest.mark.parametrize("index", range(9))
def test_deleted_point_lies_on_nonic(triangle_nine, index: int) -> None:
    assert ninth_zero_membership(triangle_nine, triangle_nine[index])


# ---------------------------------------------------------------------------
# Projektive Invarianz
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("seed", [1, 2, 3])
def test_admissibility_is_projectively_invariant(triangle_nine, seed: int) -> None:
    m = random_projectivity(random.Random(seed))
    image = [map_point(m, P) for P in triangle_nine]
    certificate = check_admissible(image)
    assert certificate.admissible
    assert certificate.cubic.type_tag is CubicType.TRIANGLE
