from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from modan.algebra import (Algebra, AlgebraError, NotAssociative, NotCommutative, annihilator,
                           find_unit, validate_algebra)
from modan.exactlin import Subspace, unit_vector
from modan.fixtures import dual_numbers, field, truncated_ideal, zero_algebra

from conftest import coords, invertible, transport

ALL = [field, dual_numbers, truncated_ideal]


def test_fixture_dimensions():
    assert [f().dim for f in ALL] == [1, 2, 2]
    assert zero_algebra().dim == 0


def test_dual_number_products(A2):
    e, x = A2.basis_element(0), A2.basis_element(1)
    assert A2.mul(x, x) == (0, 0)
    assert A2.mul(e, x) == x


def test_noncommutative_table_is_rejected():
    with pytest.raises(NotCommutative):
        validate_algebra([[[1, 0], [0, 1]], [[1, 0], [0, 0]]])


def test_nonassociative_table_reports_witness():
    # u*u = v, u*v = u, v*v = 0: (u*u)*v = 0 while u*(u*v) = v
    with pytest.raises(NotAssociative) as info:
        validate_algebra([[[0, 1], [1, 0]], [[1, 0], [0, 0]]])
    assert "(b0*b0)*b1 != b0*(b0*b1)" in str(info.value)


def test_bad_tensor_shape():
    with pytest.raises(AlgebraError):
        Algebra("bad", ["a", "b"], [[[0, 0]]])


def test_units(A1, A2, A3):
    assert find_unit(A1) == (1,)
    assert find_unit(A2) == (1, 0)
    assert find_unit(A3) is None
    assert find_unit(zero_algebra()) == ()


def test_annihilators(A2, A3):
    assert annihilator(A2).dim == 0
    assert annihilator(A3) == Subspace.span([unit_vector(2, 1)], 2)


def test_ad_is_multiplication(A3):
    u = A3.basis_element(0)
    assert A3.ad(u).column(0) == (0, 1)
    assert A3.ad(u).column(1) == (0, 0)


@pytest.mark.parametrize("make", ALL)
@given(data=st.data())
def test_axioms_on_random_elements(make, data):
    a = make()
    f, g, h = (data.draw(coords(a.dim)) for _ in range(3))
    assert a.mul(f, g) == a.mul(g, f)
    assert a.mul(a.mul(f, g), h) == a.mul(f, a.mul(g, h))
    assert a.ad(f) @ a.ad(g) == a.ad(a.mul(f, g))


@pytest.mark.parametrize("make", ALL)
@given(data=st.data())
def test_change_of_basis_preserves_structure(make, data):
    a = make()
    b = transport(a, data.draw(invertible(a.dim)))
    assert annihilator(b).dim == annihilator(a).dim
    assert (find_unit(b) is None) == (find_unit(a) is None)
