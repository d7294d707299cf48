from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from modan.exactlin import (DimensionMismatch, Matrix, NotInvertible, Subspace, format_fraction,
                            image_basis, kernel_basis, quotient_dim, rank, rref, solve,
                            to_fraction, unit_vector)

from conftest import rationals


@st.composite
def matrices(draw, max_rows=4, max_cols=4):
    r = draw(st.integers(0, max_rows))
    c = draw(st.integers(0, max_cols))
    rows = draw(st.lists(st.lists(rationals, min_size=c, max_size=c), min_size=r, max_size=r))
    return Matrix(rows, c)


def test_to_fraction_accepts_strings_and_ints():
    assert to_fraction("3/6") == Fraction(1, 2)
    assert to_fraction(-4) == Fraction(-4)
    assert format_fraction(Fraction(-2, 4)) == "-1/2"
    assert format_fraction(Fraction(3)) == "3"


def test_rref_of_known_matrix():
    m = Matrix([[1, 2, 3], [2, 4, 6], [1, 0, 1]], 3)
    r, pivots, rk = rref(m)
    assert rk == 2
    assert pivots == [0, 1]
    assert r.rows[0] == (1, 0, 1)
    assert r.rows[1] == (0, 1, 1)


def test_kernel_of_known_matrix():
    m = Matrix([[1, 1, 0], [0, 0, 1]], 3)
    ker = kernel_basis(m)
    assert ker.dim == 1
    assert ker.contains((1, -1, 0))


def test_inverse_and_singular():
    m = Matrix([[2, 1], [1, 1]], 2)
    assert m @ m.inverse() == Matrix.identity(2)
    with pytest.raises(NotInvertible):
        Matrix([[1, 2], [2, 4]], 2).inverse()


def test_shape_mismatch():
    with pytest.raises(DimensionMismatch):
        Matrix.identity(2) @ Matrix.identity(3)


def test_solve_inconsistent_system():
    m = Matrix([[1, 0], [1, 0]], 2)
    assert solve(m, (1, 2)) is None
    assert solve(m, (1, 1)) is not None


def test_subspace_operations():
    a = Subspace.span([unit_vector(3, 0), unit_vector(3, 1)], 3)
    b = Subspace.span([unit_vector(3, 1), unit_vector(3, 2)], 3)
    assert a.intersect(b) == Subspace.span([unit_vector(3, 1)], 3)
    assert a.sum(b) == Subspace.full(3)
    assert quotient_dim(a.intersect(b), a) == 1
    assert Subspace.zero(3).is_subspace_of(a)


@given(matrices())
def test_rank_nullity(m):
    assert rank(m) + kernel_basis(m).dim == m.ncols
    assert image_basis(m).dim == rank(m)


@given(matrices())
def test_kernel_vectors_are_killed(m):
    for v in kernel_basis(m).basis:
        assert all(x == 0 for x in m.apply(v))


@given(matrices())
def test_rref_is_idempotent(m):
    r, pivots, _ = rref(m)
    r2, pivots2, _ = rref(r)
    assert r2 == r and pivots2 == pivots


@given(matrices(), st.data())
def test_solve_recovers_image_points(m, data):
    x = data.draw(st.lists(rationals, min_size=m.ncols, max_size=m.ncols))
    b = m.apply(x)
    y = solve(m, b)
    assert y is not None and m.apply(y) == b


@given(st.integers(1, 4).flatmap(lambda n: st.lists(
    st.lists(rationals, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_inverse_round_trip(rows):
    m = Matrix(rows, len(rows))
    try:
        inv = m.inverse()
    except NotInvertible:
        assert rank(m) < m.ncols
        return
    assert m @ inv == Matrix.identity(m.ncols) == inv @ m


@given(matrices())
def test_subspace_is_canonical(m):
    vecs = m.rows
    s1 = Subspace.span(vecs, m.ncols)
    s2 = Subspace.span(list(reversed(vecs)) + [tuple(2 * x for x in v) for v in vecs], m.ncols)
    assert s1 == s2
