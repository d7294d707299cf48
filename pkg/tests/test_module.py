from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from modan.exactlin import Matrix, Subspace, unit_vector
from modan.module import (ModuleOverAlgebra, NotAModule, adjoint_module, ann_of_algebra_in_module,
                          ann_of_module_in_algebra, endomorphisms, free_module, hom_into_annihilator)

from conftest import coords


def test_free_and_adjoint(A2, M2, M2r2, AD3):
    assert M2.dim == 2 and M2.free_rank == 1
    assert M2r2.dim == 4 and M2r2.free_rank == 2
    assert AD3.is_adjoint and adjoint_module(A2).is_adjoint
    assert free_module(A2, 0).dim == 0


def test_incompatible_action_is_rejected(A2):
    # x acting as the identity contradicts x*x = 0
    with pytest.raises(NotAModule):
        ModuleOverAlgebra(A2, "bad", ["m"], [[[1]], [[1]]])


def test_annihilators_of_ad3(AD3):
    assert ann_of_algebra_in_module(AD3) == Subspace.span([unit_vector(2, 1)], 2)
    assert ann_of_module_in_algebra(AD3) == Subspace.span([unit_vector(2, 1)], 2)


def test_annihilators_of_m2(M2):
    assert ann_of_algebra_in_module(M2).dim == 0
    assert ann_of_module_in_algebra(M2).dim == 0


def test_endomorphism_dimensions(M2, M2r2, AD3):
    assert endomorphisms(M2).dim == 2
    assert endomorphisms(AD3).dim == 2
    assert endomorphisms(M2r2).dim == 8


def test_hom_into_annihilator(M2, AD3):
    assert hom_into_annihilator(M2).dim == 0
    h = hom_into_annihilator(AD3)
    assert h.dim == 1
    # u -> v, v -> 0
    assert h.contains(Matrix([[0, 0], [1, 0]], 2).flatten())


@pytest.mark.parametrize("name", ["M2", "M2r2", "AD3"])
@given(data=st.data())
def test_action_compatibility_random(name, data):
    from modan import fixtures
    mod = fixtures.MODULES[name]()
    a = mod.base
    f, g = data.draw(coords(a.dim)), data.draw(coords(a.dim))
    x = data.draw(coords(mod.dim))
    assert mod.act(f, mod.act(g, x)) == mod.act(a.mul(f, g), x)
    ends = endomorphisms(mod)
    phi = Matrix.from_flat(ends.element(data.draw(coords(ends.dim))), mod.dim, mod.dim)
    assert phi.apply(mod.act(f, x)) == mod.act(f, phi.apply(x))
