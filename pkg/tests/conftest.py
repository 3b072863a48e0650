from __future__ import annotations

import random

import pytest

from sextic import config
from sextic.examples import load_fixtures, points_of
from sextic.ternary_forms import ProjectivePoint, parse_form


ROBINSON_BASE = [
    (1, 1, 1), (1, -1, 1), (-1, 1, 1), (-1, -1, 1),
    (1, 0, 1), (-1, 0, 1), (0, 1, 1), (0, -1, 1),
]

TRIANGLE_NINE = [
    (0, 1, 1), (0, -1, 1), (0, "3/2", 1),
    (1, 0, 1), (1, 0, -1), (1, 0, "1/3"),
    (1, 1, 0), (-1, 1, 0), (-2, 1, 0),
]

ROBINSON = (
    "x^6 + y^6 + z^6 - x^4*y^2 - x^4*z^2 - y^4*x^2 - y^4*z^2"
    " - z^4*x^2 - z^4*y^2 + 3*x^2*y^2*z^2"
)


def _points(rows) -> list[ProjectivePoint]:
    return [ProjectivePoint.of(*row) for row in rows]


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240611)


@pytest.fixture(scope="session")
def fixtures() -> dict:
    return load_fixtures()


@pytest.fixture
def robinson_base() -> list[ProjectivePoint]:
    return _points(ROBINSON_BASE)


@pytest.fixture
def robinson_ten(fixtures) -> list[ProjectivePoint]:
    return points_of(fixtures["robinson_ten"])


@pytest.fixture
def robinson():
    return parse_form(ROBINSON)


@pytest.fixture
def triangle_nine() -> list[ProjectivePoint]:
    return _points(TRIANGLE_NINE)


@pytest.fixture
def db_path(tmp_path, monkeypatch):
    path = tmp_path / "sextic_test.db"
    monkeypatch.setattr(config, "DB_PATH", path)
    return path
