from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from modan import fixtures
from modan.derivation import (NotADerivation, PotentialNotALinear, connection_from_operators,
                              connection_from_potential, derivation_fiber, derivation_injection_free,
                              derivation_space, is_derivation, is_module_derivation,
                              module_derivation_space, split_adjoint_derivation)
from modan.exactlin import Matrix
from modan.module import endomorphisms
from modan.multiplier import projection_image, projection_kernel
from modan.operators import PairOperator

from conftest import coords, invertible, transport


def test_dimensions(A1, A2, A3, M2, M2r2, AD3):
    assert [derivation_space(a).dim for a in (A1, A2, A3)] == [0, 1, 2]
    assert module_derivation_space(M2).dim == 3
    assert module_derivation_space(AD3).dim == 4
    assert module_derivation_space(M2r2).dim == 9


def test_a3_bracket_sign(A3):
    # Euler field u -> u, v -> 2v and the shift u -> v
    E = Matrix([[1, 0], [0, 2]], 2)
    S = Matrix([[0, 0], [1, 0]], 2)
    assert is_derivation(A3, E) and is_derivation(A3, S)
    assert E.commutator(S) == S


def test_non_derivation(A2):
    assert not is_derivation(A2, Matrix.identity(2))


def test_fibers_are_endomorphisms(M2, AD3):
    for mod in (M2, AD3):
        space = module_derivation_space(mod)
        assert projection_kernel(space) == endomorphisms(mod)
        assert projection_image(space) == derivation_space(mod.base).space
        X = derivation_space(mod.base).basis_ops[0][0]
        fib = derivation_fiber(mod, X)
        assert fib is not None and fib.dim == 2


def test_free_lift(M2r2):
    for (X,) in derivation_space(M2r2.base).basis_ops:
        assert is_module_derivation(M2r2, derivation_injection_free(M2r2, X))
    with pytest.raises(NotADerivation):
        derivation_injection_free(M2r2, Matrix.identity(2))


def test_flat_connection_on_free_module(M2r2):
    sec = connection_from_potential(M2r2)
    assert sec.flags == {"F-linear": True, "A-linear": True, "Lie": True, "A-Lie": True}


def test_curved_connection_on_ad3(AD3):
    # potential: first basis derivation -> 0, second -> identity
    sec = connection_from_potential(AD3, {1: Matrix.identity(2)})
    assert sec.curvature(0, 1) == Matrix.identity(2).scale(-1)
    assert not sec.is_lie
    assert not sec.is_algebra_linear


def test_algebra_linear_potentials_on_ad3_are_flat(AD3):
    ends = endomorphisms(AD3)
    for k in range(ends.dim):
        P = Matrix.from_flat(ends.basis[k], 2, 2)
        for j in range(2):
            sec = connection_from_potential(AD3, {j: P})
            if sec.is_algebra_linear:
                assert sec.is_lie


def test_potential_must_be_algebra_linear(M2):
    with pytest.raises(PotentialNotALinear):
        connection_from_potential(M2, {0: Matrix([[0, 1], [0, 0]], 2)})
    with pytest.raises(PotentialNotALinear):
        connection_from_potential(M2, {5: Matrix.identity(2)})


def test_connection_from_bad_operators(M2):
    with pytest.raises(NotADerivation):
        connection_from_operators(M2, [Matrix.zeros(2, 2)])


def test_split_adjoint_derivation(AD3):
    for b in module_derivation_space(AD3).basis_ops:
        d = PairOperator(*b)
        base, vertical = split_adjoint_derivation(AD3, d)
        assert base + vertical == d
        assert is_module_derivation(AD3, base) and is_module_derivation(AD3, vertical)


@pytest.mark.parametrize("name", ["A2", "A3"])
@given(data=st.data())
def test_leibniz_and_bracket_closure(name, data):
    a = fixtures.ALGEBRAS[name]()
    sp = derivation_space(a)
    X = sp.operator(data.draw(coords(sp.dim)))
    Y = sp.operator(data.draw(coords(sp.dim)))
    f, g = data.draw(coords(a.dim)), data.draw(coords(a.dim))
    lhs = X.apply(a.mul(f, g))
    rhs = tuple(p + q for p, q in zip(a.mul(X.apply(f), g), a.mul(f, X.apply(g))))
    assert lhs == rhs
    assert is_derivation(a, X.commutator(Y))


@pytest.mark.parametrize("name", ["M2", "M2r2", "AD3"])
@given(data=st.data())
def test_module_leibniz(name, data):
    mod = fixtures.MODULES[name]()
    sp = module_derivation_space(mod)
    d = sp.pair(data.draw(coords(sp.dim)))
    e = sp.pair(data.draw(coords(sp.dim)))
    f, x = data.draw(coords(mod.base.dim)), data.draw(coords(mod.dim))
    lhs = d.module_op.apply(mod.act(f, x))
    rhs = tuple(p + q for p, q in zip(mod.act(d.algebra_op.apply(f), x),
                                      mod.act(f, d.module_op.apply(x))))
    assert lhs == rhs
    assert is_module_derivation(mod, d.bracket(e))


@given(data=st.data())
def test_dimension_is_basis_independent(data):
    a = fixtures.truncated_ideal()
    b = transport(a, data.draw(invertible(2)))
    assert derivation_space(b).dim == 2


def test_ad_u_potential_is_flat(AD3):
    # ad_u coincides with the shift derivation as a matrix, so the bracket cancels
    sec = connection_from_potential(AD3, {0: AD3.act_matrix((1, 0))})
    assert sec.is_algebra_linear
    assert sec.curvature(0, 1).is_zero()
