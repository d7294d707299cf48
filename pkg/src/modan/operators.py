"""Operator pairs and coordinatised solution spaces of operators."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .exactlin import Matrix, Subspace, Vector, lincomb, vec
from .linsys import join_matrices, split_vector


@dataclass(frozen=True)
class PairOperator:
    """A (module operator, algebra operator) pair; composition is componentwise."""

    module_op: Matrix
    algebra_op: Matrix

    def __add__(self, other: PairOperator) -> PairOperator:
        return PairOperator(self.module_op + other.module_op, self.algebra_op + other.algebra_op)

    def __sub__(self, other: PairOperator) -> PairOperator:
        return PairOperator(self.module_op - other.module_op, self.algebra_op - other.algebra_op)

    def scale(self, c) -> PairOperator:
        return PairOperator(self.module_op.scale(c), self.algebra_op.scale(c))

    def compose(self, other: PairOperator) -> PairOperator:
        return PairOperator(self.module_op @ other.module_op, self.algebra_op @ other.algebra_op)

    __matmul__ = compose

    def bracket(self, other: PairOperator) -> PairOperator:
        return PairOperator(self.module_op.commutator(other.module_op),
                            self.algebra_op.commutator(other.algebra_op))

    def is_zero(self) -> bool:
        return self.module_op.is_zero() and self.algebra_op.is_zero()

    def as_tuple(self) -> tuple[Matrix, Matrix]:
        return (self.module_op, self.algebra_op)


# Module multipliers and module derivations are both pairs; the names only
# document which defining identity the pair is expected to satisfy.
ModuleMultiplier = PairOperator
ModuleDerivation = PairOperator


@dataclass(frozen=True, eq=False)
class OperatorSpace:
    """A solution space of operator tuples with its algebraic operations.

    ``space`` lives in the concatenated row-major coordinates of the
    components.  ``left_actions[i]`` gives, per component, the matrix by
    which the algebra basis element ``i`` acts (by left composition).
    """

    name: str
    sizes: tuple[int, ...]
    space: Subspace
    left_actions: tuple[tuple[Matrix, ...], ...]
    algebra_component: int | None = None

    @property
    def dim(self) -> int:
        return self.space.dim

    def split(self, v: Sequence[Fraction]) -> tuple[Matrix, ...]:
        return split_vector(v, self.sizes)

    def join(self, mats: Sequence[Matrix]) -> Vector:
        return join_matrices(mats)

    def element(self, coords: Sequence) -> tuple[Matrix, ...]:
        return self.split(self.space.element(coords))

    def coordinates(self, mats: Sequence[Matrix]) -> Vector | None:
        return self.space.coordinates(self.join(mats))

    def contains(self, mats: Sequence[Matrix]) -> bool:
        return self.coordinates(mats) is not None

    def require_coordinates(self, mats: Sequence[Matrix]) -> Vector:
        c = self.coordinates(mats)
        if c is None:
            raise ValueError(f"operator is not in {self.name}")
        return c

    @cached_property
    def basis_ops(self) -> tuple[tuple[Matrix, ...], ...]:
        return tuple(self.split(b) for b in self.space.basis)

    def _table(self, op) -> tuple[tuple[Vector, ...], ...]:
        ops = self.basis_ops
        return tuple(
            tuple(self.require_coordinates([op(x, y) for x, y in zip(a, b)]) for b in ops)
            for a in ops
        )

    @cached_property
    def composition_table(self) -> tuple[tuple[Vector, ...], ...]:
        return self._table(lambda x, y: x @ y)

    @cached_property
    def bracket_table(self) -> tuple[tuple[Vector, ...], ...]:
        return self._table(lambda x, y: x.commutator(y))

    @cached_property
    def action_matrices(self) -> tuple[Matrix, ...]:
        """Matrix of ``eta -> b_i . eta`` in the canonical coordinates, per algebra basis ``i``."""
        out = []
        for acts in self.left_actions:
            cols = [self.require_coordinates([A @ x for A, x in zip(acts, b)]) for b in self.basis_ops]
            out.append(Matrix.from_columns(cols, self.dim))
        return tuple(out)

    def _bilinear(self, table, u: Sequence, v: Sequence) -> Vector:
        out = [Fraction(0)] * self.dim
        for a, x in enumerate(u):
            if not x:
                continue
            for b, y in enumerate(v):
                if not y:
                    continue
                for k, t in enumerate(table[a][b]):
                    if t:
                        out[k] += x * y * t
        return tuple(out)

    def compose(self, u: Sequence, v: Sequence) -> Vector:
        """Coordinates of the composite of two elements given in coordinates."""
        return self._bilinear(self.composition_table, vec(u), vec(v))

    def bracket(self, u: Sequence, v: Sequence) -> Vector:
        return self._bilinear(self.bracket_table, vec(u), vec(v))

    def act(self, f: Sequence, u: Sequence) -> Vector:
        out = [Fraction(0)] * self.dim
        for c, L in zip(vec(f), self.action_matrices):
            if c:
                for k, a in enumerate(L.apply(vec(u))):
                    out[k] += c * a
        return tuple(out)

    def operator(self, coords: Sequence, component: int = 0) -> Matrix:
        return self.element(coords)[component]

    def pair(self, coords: Sequence) -> PairOperator:
        mats = self.element(coords)
        if len(mats) != 2:
            raise ValueError(f"{self.name} does not hold pairs")
        return PairOperator(*mats)

    def algebra_part(self, coords: Sequence) -> Matrix:
        if self.algebra_component is None:
            raise ValueError(f"{self.name} has no algebra component")
        return self.element(coords)[self.algebra_component]


def combine(coeffs: Sequence, vectors: Sequence[Sequence[Fraction]], n: int) -> Vector:
    return lincomb(vec(coeffs), vectors, n)
