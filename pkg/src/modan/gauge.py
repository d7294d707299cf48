"""Gauge transforms: conjugating the module component of a pair by a module
automorphism while leaving the algebra component untouched."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .exactlin import Matrix, NotInvertible
from .module import ModuleOverAlgebra, endomorphisms
from .operators import PairOperator


class NotALinear(ValueError):
    pass


@dataclass(frozen=True)
class ModuleAutomorphism:
    module: ModuleOverAlgebra
    g: Matrix
    g_inv: Matrix

    def conjugate(self, op: Matrix) -> Matrix:
        return self.g @ op @ self.g_inv

    def __matmul__(self, other: ModuleAutomorphism) -> ModuleAutomorphism:
        return ModuleAutomorphism(self.module, self.g @ other.g, other.g_inv @ self.g_inv)

    def inverse(self) -> ModuleAutomorphism:
        return ModuleAutomorphism(self.module, self.g_inv, self.g)


def make_automorphism(mod: ModuleOverAlgebra, g: Matrix) -> ModuleAutomorphism:
    m = mod.dim
    if g.shape != (m, m):
        raise NotALinear(f"expected a {m}x{m} matrix, got {g.shape}")
    if not endomorphisms(mod).contains(g.flatten()):
        raise NotALinear("matrix does not commute with the algebra action")
    try:
        g_inv = g.inverse()
    except NotInvertible as exc:
        raise NotInvertible("module endomorphism is not invertible") from exc
    ident = Matrix.identity(m)
    if g @ g_inv != ident or g_inv @ g != ident:
        raise NotInvertible("computed inverse failed the round trip")
    return ModuleAutomorphism(mod, g, g_inv)


def gauge(G: ModuleAutomorphism, p: PairOperator) -> PairOperator:
    return PairOperator(G.conjugate(p.module_op), p.algebra_op)


def gauge_multiplier(G: ModuleAutomorphism, p: PairOperator) -> PairOperator:
    return gauge(G, p)


def gauge_derivation(G: ModuleAutomorphism, d: PairOperator) -> PairOperator:
    return gauge(G, d)


def is_equivalent_via(G: ModuleAutomorphism, a: PairOperator, b: PairOperator) -> bool:
    """True iff ``a`` is the gauge transform of ``b`` by ``G``."""
    if a.algebra_op != b.algebra_op:
        return False
    return gauge(G, b) == a


def random_automorphism(mod: ModuleOverAlgebra, rng: random.Random,
                        max_entry: int = 3, attempts: int = 50) -> ModuleAutomorphism:
    """Identity plus a small random A-linear perturbation, retried until invertible."""
    ends = endomorphisms(mod)
    m = mod.dim
    ident = Matrix.identity(m)
    for _ in range(attempts):
        coeffs = [Fraction(rng.randint(-max_entry, max_entry), rng.randint(1, 2))
                  for _ in range(ends.dim)]
        pert = Matrix.from_flat(ends.element(coeffs), m, m) if m else Matrix.zeros(0, 0)
        try:
            return make_automorphism(mod, ident + pert)
        except NotInvertible:
            continue
    return make_automorphism(mod, ident)
