from __future__ import annotations

import random

import pytest
from hypothesis import given, strategies as st

from modan import fixtures, identities
from modan.derham import (DeRhamComplex, NonzeroCurvature, cartan_d, derham_cohomology,
                          euler_field, form_space, homotopy_check, interior_product,
                          lie_derivative, lift_kappa, wedge)
from modan.exactlin import Matrix
from modan.hochschild import KappaNotALinear, MixedBaseAlgebra

CARRIERS = {**fixtures.ALGEBRAS, **fixtures.MODULES}


def _H(rows):
    return [r["H"] for r in rows]


def test_form_dimensions(A2, A3, M2, AD3):
    assert [form_space(A2, A2, q).dim for q in range(3)] == [2, 1, 0]
    assert [form_space(A3, A3, q).dim for q in range(3)] == [2, 2, 0]
    assert [form_space(M2, M2, q).dim for q in range(4)] == [2, 3, 1, 0]
    assert [form_space(AD3, AD3, q).dim for q in range(4)] == [2, 4, 2, 0]


def test_cohomology(A2, A3, M2, AD3):
    assert _H(derham_cohomology(A2, A2, None, 3)) == [1, 0, 0, 0]
    for U in (A3, M2, AD3):
        assert _H(derham_cohomology(U, U, None, 3)) == [0, 0, 0, 0]


def test_lifted_kappa_into_free_module(A2, M2r2):
    rows = derham_cohomology(A2, M2r2, lift_kappa(M2r2), 2)
    assert [r["dim"] for r in rows] == [4, 2, 0]
    assert _H(rows) == [2, 0, 0]


def test_curved_kappa_is_refused(A3):
    # kappa = 2 id is A-linear on D(A3) but [2X, 2Y] != 2[X, Y]
    cx = DeRhamComplex(A3, A3, Matrix.identity(2).scale(2))
    assert not cx.is_flat()
    with pytest.raises(NonzeroCurvature):
        cx.cohomology(1)


def test_kappa_checks(A2, A3, AD3):
    with pytest.raises(KappaNotALinear):
        DeRhamComplex(A3, A3, Matrix([[0, 1], [1, 0]], 2))
    with pytest.raises(MixedBaseAlgebra):
        DeRhamComplex(A2, AD3)
    with pytest.raises(ValueError):
        DeRhamComplex(A3, A3, Matrix.identity(3))


def test_evaluation_is_alternating(AD3):
    cx = DeRhamComplex(AD3, AD3)
    w = cx.basis_forms(2)[0]
    assert cx.evaluate(w, (0, 1)) == tuple(-x for x in cx.evaluate(w, (1, 0)))
    assert cx.evaluate(w, (1, 1)) == (0, 0)


def test_module_level_wrappers(M2):
    cx = DeRhamComplex(M2, M2)
    w = cx.basis_forms(1)[0]
    xi = (1, 0, 0)
    assert cartan_d(w) == cx.d(w)
    assert interior_product(xi, w) == cx.interior(xi, w)
    assert lie_derivative(xi, w) == cx.lie(xi, w)


def test_wedge_needs_scalar_form(M2):
    cx = DeRhamComplex(M2, M2)
    w = cx.basis_forms(0)[0]
    with pytest.raises(ValueError):
        wedge(w, w)


def test_homotopy(M2, M2r2, AD3):
    for mod in (M2, M2r2, AD3):
        rep = homotopy_check(mod, 3)
        assert rep.ok, rep.failures
    assert homotopy_check(M2, 3).checked == {0: 2, 1: 3, 2: 1, 3: 0}


def test_euler_field_acts_as_identity(AD3):
    cx = DeRhamComplex(AD3, AD3)
    assert identities.lie_euler_is_identity(cx, euler_field(AD3), 2) == []


@pytest.mark.parametrize("name", ["A2", "A3", "M2", "AD3"])
def test_structural_identities(name):
    U = CARRIERS[name]()
    cx = DeRhamComplex(U, U)
    assert identities.derham_d_squared(cx, 3) == []
    assert identities.cartan_magic(cx, 3) == []
    assert identities.lie_commutes_with_d(cx, 3) == []


LAWS = [identities.interior_anticommute, identities.interior_antiderivation,
        identities.lie_derivation_law, identities.d_leibniz, identities.lie_bracket_law,
        identities.lie_interior_law, identities.wedge_laws, identities.derham_membership]


@pytest.mark.parametrize("name", ["A2", "A3", "M2", "AD3"])
@pytest.mark.parametrize("law", LAWS, ids=lambda f: f.__name__)
@given(seed=st.integers(0, 10_000))
def test_calculus_laws_random(name, law, seed):
    U = CARRIERS[name]()
    cx = DeRhamComplex(U, U)
    assert law(cx, 2, random.Random(seed)) == []


@given(seed=st.integers(0, 10_000))
def test_laws_for_lifted_kappa(seed):
    mod = fixtures.m2r2()
    cx = DeRhamComplex(mod.base, mod, lift_kappa(mod))
    rng = random.Random(seed)
    assert identities.d_leibniz(cx, 1, rng) == []
    assert identities.interior_antiderivation(cx, 1, rng) == []
