from __future__ import annotations

from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from modan import fixtures

settings.register_profile("modan", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("modan")

FIXTURE_DIR = Path(__file__).resolve().parent.parent / "fixtures"

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)
small_ints = st.integers(-3, 3).map(Fraction)


def coords(n: int, elements=small_ints):
    return st.lists(elements, min_size=n, max_size=n).map(tuple)


@pytest.fixture
def A1():
    return fixtures.field()


@pytest.fixture
def A2():
    return fixtures.dual_numbers()


@pytest.fixture
def A3():
    return fixtures.truncated_ideal()


@pytest.fixture
def M2():
    return fixtures.m2()


@pytest.fixture
def M2r2():
    return fixtures.m2r2()


@pytest.fixture
def AD3():
    return fixtures.ad3()


@pytest.fixture
def fixture_dir() -> Path:
    return FIXTURE_DIR


def transport(alg, P):
    """The same algebra written in the basis given by the columns of P."""
    from modan.algebra import Algebra
    from modan.exactlin import unit_vector
    n = alg.dim
    Pinv = P.inverse()
    cols = P.columns()
    products = [[Pinv.apply(alg.mul(cols[i], cols[j])) for j in range(n)] for i in range(n)]
    return Algebra(alg.name + "'", [f"c{i}" for i in range(n)], products)


@st.composite
def invertible(draw, n: int):
    from modan.exactlin import Matrix, NotInvertible
    rows = draw(st.lists(st.lists(st.integers(-2, 2), min_size=n, max_size=n),
                         min_size=n, max_size=n))
    m = Matrix(rows, n)
    try:
        m.inverse()
    except NotInvertible:
        return Matrix.identity(n)
    return m
