from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from modan import fixtures
from modan.algebra import NoUnit, annihilator
from modan.exactlin import Matrix, Subspace, image_basis, kernel_basis, unit_vector
from modan.module import hom_into_annihilator
from modan.multiplier import (NotAMultiplier, NotASection, adjoint_embedding, componentwise_section,
                              composition_residual, is_module_multiplier, is_multiplier,
                              module_multiplier_space, multiplier_fiber, multiplier_injection_free,
                              multiplier_space, projection_image, projection_kernel,
                              section_from_operators, split_adjoint_multiplier, unit_isomorphism)
from modan.operators import PairOperator

from conftest import coords, invertible, transport


def test_dimensions(A1, A2, A3, M2, M2r2, AD3):
    assert [multiplier_space(a).dim for a in (A1, A2, A3)] == [1, 2, 2]
    assert module_multiplier_space(M2).dim == 2
    assert module_multiplier_space(AD3).dim == 3
    assert module_multiplier_space(M2r2).dim == 2


def test_a3_multipliers_are_not_only_adjoint(A3):
    # R(u) = v, R(v) = 0 is ad_u; R(u) = u, R(v) = v is the identity
    assert is_multiplier(A3, Matrix.identity(2))
    assert is_multiplier(A3, A3.ad((1, 0)))
    assert not is_multiplier(A3, Matrix([[0, 1], [0, 0]], 2))


def test_unit_isomorphism_round_trip(A2):
    iso = unit_isomorphism(A2)
    for (R,) in multiplier_space(A2).basis_ops:
        assert iso.inverse(iso(R)) == R
    with pytest.raises(NotAMultiplier):
        iso(Matrix([[0, 1], [0, 0]], 2))


def test_unit_isomorphism_needs_unit(A3):
    with pytest.raises(NoUnit):
        unit_isomorphism(A3)


def test_commutators_land_in_annihilator(A3):
    ann = annihilator(A3)
    ops = [b[0] for b in multiplier_space(A3).basis_ops]
    for R in ops:
        for S in ops:
            for v in image_basis(R.commutator(S)).basis:
                assert ann.contains(v)


def test_fibers_over_ad3(AD3):
    space = module_multiplier_space(AD3)
    assert projection_image(space) == multiplier_space(AD3.base).space
    assert projection_kernel(space) == hom_into_annihilator(AD3)
    fib = multiplier_fiber(AD3, Matrix.identity(2))
    assert fib is not None and fib.dim == 1
    for D in fib.direction_ops():
        p = PairOperator(fib.base_point.module_op + D, Matrix.identity(2))
        assert is_module_multiplier(AD3, p)
    with pytest.raises(NotAMultiplier):
        multiplier_fiber(AD3, Matrix([[0, 1], [0, 0]], 2))


def test_adjoint_embedding_kernel(AD3, M2):
    emb = adjoint_embedding(AD3)
    assert emb.kernel == Subspace.span([unit_vector(2, 1)], 2)
    assert adjoint_embedding(M2).kernel.dim == 0


def test_free_lift_and_section(M2r2):
    for (R,) in multiplier_space(M2r2.base).basis_ops:
        assert is_module_multiplier(M2r2, multiplier_injection_free(M2r2, R))
    sec = componentwise_section(M2r2)
    assert sec.is_algebra_linear
    ops = [b[0] for b in multiplier_space(M2r2.base).basis_ops]
    for R1 in ops:
        for R2 in ops:
            assert composition_residual(sec, R1, R2).is_zero()


def test_section_rejects_non_multiplier(M2):
    with pytest.raises(NotASection):
        section_from_operators(M2, [Matrix.identity(2), Matrix.identity(2)])


def test_split_adjoint_multiplier(AD3):
    space = module_multiplier_space(AD3)
    for b in space.basis_ops:
        p = PairOperator(*b)
        base, vertical = split_adjoint_multiplier(AD3, p)
        assert base + vertical == p
        assert vertical.algebra_op.is_zero()
        assert is_module_multiplier(AD3, base) and is_module_multiplier(AD3, vertical)


@pytest.mark.parametrize("name", ["A1", "A2", "A3"])
@given(data=st.data())
def test_random_multiplier_identity(name, data):
    a = fixtures.ALGEBRAS[name]()
    sp = multiplier_space(a)
    R = sp.operator(data.draw(coords(sp.dim)))
    f, g = data.draw(coords(a.dim)), data.draw(coords(a.dim))
    assert R.apply(a.mul(f, g)) == a.mul(f, R.apply(g))
    # kernels and images are ideals
    for v in kernel_basis(R).basis:
        assert all(x == 0 for x in R.apply(a.mul(f, v)))
    for v in image_basis(R).basis:
        assert image_basis(R).contains(a.mul(f, v))


@pytest.mark.parametrize("name", ["M2", "M2r2", "AD3"])
@given(data=st.data())
def test_random_module_multiplier_identity(name, data):
    mod = fixtures.MODULES[name]()
    sp = module_multiplier_space(mod)
    p = sp.pair(data.draw(coords(sp.dim)))
    f, x = data.draw(coords(mod.base.dim)), data.draw(coords(mod.dim))
    assert p.module_op.apply(mod.act(f, x)) == mod.act(p.algebra_op.apply(f), x)
    assert p.module_op.apply(mod.act(f, x)) == mod.act(f, p.module_op.apply(x))


@pytest.mark.parametrize("name", ["A2", "A3"])
@given(data=st.data())
def test_dimension_is_basis_independent(name, data):
    a = fixtures.ALGEBRAS[name]()
    b = transport(a, data.draw(invertible(a.dim)))
    assert multiplier_space(b).dim == multiplier_space(a).dim
