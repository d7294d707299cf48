from __future__ import annotations

import random

import pytest
from hypothesis import given, strategies as st

from modan import fixtures
from modan.derivation import is_derivation, module_derivation_space
from modan.exactlin import Matrix, NotInvertible
from modan.gauge import (NotALinear, gauge, gauge_derivation, gauge_multiplier, is_equivalent_via,
                         make_automorphism, random_automorphism)
from modan.multiplier import componentwise_lift, module_multiplier_space
from modan.operators import PairOperator

from conftest import coords


def test_unipotent_gauge_on_m2(M2):
    # G = multiplication by e + x, X(x) = x
    G = make_automorphism(M2, M2.act_matrix((1, 1)))
    X = Matrix([[0, 0], [0, 1]], 2)
    assert is_derivation(M2.base, X)
    nabla = PairOperator(componentwise_lift(M2, X), X)
    out = gauge_derivation(G, nabla)
    assert out.module_op == nabla.module_op - M2.act_matrix((0, 1))
    assert out.algebra_op == X
    assert G.g_inv == M2.act_matrix((1, -1))


def test_rejects_non_linear_and_singular(M2):
    with pytest.raises(NotALinear):
        make_automorphism(M2, Matrix([[0, 1], [0, 0]], 2))
    with pytest.raises(NotALinear):
        make_automorphism(M2, Matrix.identity(3))
    with pytest.raises(NotInvertible):
        make_automorphism(M2, M2.act_matrix((0, 1)))


def test_equivalence(M2):
    G = make_automorphism(M2, M2.act_matrix((2, 1)))
    p = PairOperator(*module_derivation_space(M2).basis_ops[0])
    assert is_equivalent_via(G, gauge(G, p), p)
    assert not is_equivalent_via(G, p, PairOperator(p.module_op, p.algebra_op.scale(2)))


@pytest.mark.parametrize("name", ["M2", "M2r2", "AD3"])
@given(seed=st.integers(0, 10_000), data=st.data())
def test_gauge_laws_random(name, seed, data):
    mod = fixtures.MODULES[name]()
    rng = random.Random(seed)
    G, H = random_automorphism(mod, rng), random_automorphism(mod, rng)
    for space, transform in ((module_multiplier_space(mod), gauge_multiplier),
                             (module_derivation_space(mod), gauge_derivation)):
        p = space.pair(data.draw(coords(space.dim)))
        q = space.pair(data.draw(coords(space.dim)))
        gp, gq = transform(G, p), transform(G, q)
        assert space.contains(gp.as_tuple())
        assert gp.algebra_op == p.algebra_op
        # group action
        assert transform(G @ H, p) == transform(G, transform(H, p))
        assert transform(G.inverse(), gp) == p
        # Lie and associative structure
        assert transform(G, p.bracket(q)) == gp.bracket(gq)
        assert transform(G, p + q) == gp + gq
        # A-linearity: G(f . p) = f . G(p)
        f = data.draw(coords(mod.base.dim))
        fp = PairOperator(mod.act_matrix(f) @ p.module_op, mod.base.ad(f) @ p.algebra_op)
        assert transform(G, fp) == PairOperator(mod.act_matrix(f) @ gp.module_op,
                                                mod.base.ad(f) @ gp.algebra_op)
