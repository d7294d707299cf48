"""Multipliers of algebras and modules, the projection onto the algebra
component, its fibers, and sections with their composition residual."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .algebra import Algebra, NoUnit, find_unit
from .exactlin import Matrix, Subspace, Vector, block_diag, kernel_basis, solve, unit_vector
from .linsys import LinearSystem
from .module import (
    ModuleOverAlgebra,
    NotAdjointModule,
    NotFree,
)
from .operators import ModuleMultiplier, OperatorSpace, PairOperator


class NotAMultiplier(ValueError):
    pass


class NotASection(ValueError):
    pass


def _multiplier_system(sys: LinearSystem, a: Algebra, comp: int) -> None:
    for C in a.mult_matrices:
        sys.add_commutator(comp, C)


def multiplier_algebra(a: Algebra) -> Subspace:
    """{R : R(f*g) = f*R(g)} as a subspace of row-major n x n matrices."""
    return multiplier_space(a).space


@lru_cache(maxsize=None)
def multiplier_space(a: Algebra) -> OperatorSpace:
    sys = LinearSystem([a.dim])
    _multiplier_system(sys, a, 0)
    return OperatorSpace(f"M({a.name})", (a.dim,), sys.solution(),
                         tuple((C,) for C in a.mult_matrices), algebra_component=0)


def is_multiplier(a: Algebra, R: Matrix) -> bool:
    return multiplier_space(a).contains([R])


def _module_multiplier_system(mod: ModuleOverAlgebra) -> LinearSystem:
    a = mod.base
    m, n = mod.dim, a.dim
    sys = LinearSystem([m, n])
    ident = Matrix.identity(m)
    for A in mod.action_matrices:
        sys.add_commutator(0, A)
    _multiplier_system(sys, a, 1)
    # Delta(b_i . M) = (R b_i) . M, i.e. Delta A_i - sum_k R[k][i] A_k = 0
    for i, A in enumerate(mod.action_matrices):
        sys.add_equation([(1, ident, 0, A)], m, m,
                         column_terms=[(-1, 1, i, mod.action_matrices)])
    return sys


@lru_cache(maxsize=None)
def module_multiplier_space(mod: ModuleOverAlgebra) -> OperatorSpace:
    sys = _module_multiplier_system(mod)
    acts = tuple((A, C) for A, C in zip(mod.action_matrices, mod.base.mult_matrices))
    return OperatorSpace(f"M({mod.name})", (mod.dim, mod.base.dim), sys.solution(), acts,
                         algebra_component=1)


def module_multipliers(mod: ModuleOverAlgebra) -> Subspace:
    """Joint solution space of pairs, coordinatised as (vec Delta, vec R)."""
    return module_multiplier_space(mod).space


def is_module_multiplier(mod: ModuleOverAlgebra, p: PairOperator) -> bool:
    return module_multiplier_space(mod).contains(p.as_tuple())


@dataclass(frozen=True)
class UnitIsomorphism:
    """Evaluation at the unit, R -> R(e), with inverse f -> ad_f."""

    algebra: Algebra
    unit: Vector

    def __call__(self, R: Matrix) -> Vector:
        if not is_multiplier(self.algebra, R):
            raise NotAMultiplier("not a multiplier of the algebra")
        return R.apply(self.unit)

    def inverse(self, f: Sequence) -> Matrix:
        return self.algebra.ad(f)


def unit_isomorphism(a: Algebra) -> UnitIsomorphism:
    e = find_unit(a)
    if e is None:
        raise NoUnit(f"{a.name} has no unit element")
    return UnitIsomorphism(a, e)


def project_multiplier(p: PairOperator) -> Matrix:
    return p.algebra_op


@dataclass(frozen=True)
class Fiber:
    """A nonempty fiber: ``base_point + directions``.

    ``directions`` holds row-major m x m module operators.
    """

    base_point: PairOperator
    directions: Subspace

    @property
    def dim(self) -> int:
        return self.directions.dim

    def direction_ops(self) -> list[Matrix]:
        m = self.base_point.module_op.nrows
        return [Matrix.from_flat(d, m, m) for d in self.directions.basis]


def fiber_of(space: OperatorSpace, X: Matrix) -> Fiber | None:
    """Preimage of X under the algebra-component projection of a pair space."""
    m, n = space.sizes
    target = X.flatten()
    alg = [b[m * m:] for b in space.space.basis]
    if alg:
        c = solve(Matrix.from_columns(alg, n * n), target)
    else:
        c = () if all(t == 0 for t in target) else None
    if c is None:
        return None
    return Fiber(space.pair(c), projection_kernel(space))


def projection_kernel(space: OperatorSpace) -> Subspace:
    """Module components of the pairs whose algebra component vanishes."""
    m, n = space.sizes
    basis = space.space.basis
    if not basis:
        return Subspace.zero(m * m)
    alg_map = Matrix.from_columns([b[m * m:] for b in basis], n * n)
    ker = kernel_basis(alg_map)
    return Subspace.span([space.space.element(z)[:m * m] for z in ker.basis], m * m)


def multiplier_fiber(mod: ModuleOverAlgebra, R: Matrix) -> Fiber | None:
    """Preimage of R under the projection; None when R is not in the image."""
    if not is_multiplier(mod.base, R):
        raise NotAMultiplier("R is not a multiplier of the base algebra")
    return fiber_of(module_multiplier_space(mod), R)


def projection_image(space: OperatorSpace) -> Subspace:
    m, n = space.sizes
    return Subspace.span([b[m * m:] for b in space.space.basis], n * n)


@dataclass(frozen=True)
class AdjointEmbedding:
    """f -> (ad_f, ad_f) into the module multipliers."""

    module: ModuleOverAlgebra
    matrix: Matrix   # algebra coordinates -> module-multiplier coordinates
    kernel: Subspace

    def __call__(self, f: Sequence) -> PairOperator:
        return PairOperator(self.module.act_matrix(f), self.module.base.ad(f))


def adjoint_embedding(mod: ModuleOverAlgebra) -> AdjointEmbedding:
    space = module_multiplier_space(mod)
    n = mod.base.dim
    cols = []
    for i in range(n):
        pair = (mod.action_matrices[i], mod.base.mult_matrices[i])
        cols.append(space.require_coordinates(pair))
    mat = Matrix.from_columns(cols, space.dim) if n else Matrix.zeros(space.dim, 0)
    return AdjointEmbedding(mod, mat, kernel_basis(mat))


def componentwise_lift(mod: ModuleOverAlgebra, X: Matrix) -> Matrix:
    """The operator acting as X on every coordinate block of a free module."""
    if mod.free_rank is None:
        raise NotFree(f"{mod.name} was not built as a free module")
    if mod.free_rank == 0:
        return Matrix.zeros(0, 0)
    return block_diag([X] * mod.free_rank)


def multiplier_injection_free(mod: ModuleOverAlgebra, R: Matrix) -> ModuleMultiplier:
    if not is_multiplier(mod.base, R):
        raise NotAMultiplier("R is not a multiplier of the base algebra")
    return PairOperator(componentwise_lift(mod, R), R)


@dataclass(frozen=True)
class MultiplierSection:
    """A linear section of the projection, stored on the canonical bases.

    Column ``k`` of ``matrix`` holds the module-multiplier coordinates of the
    image of the ``k``-th basis multiplier of the algebra.
    """

    module: ModuleOverAlgebra
    matrix: Matrix

    def __post_init__(self):
        base = multiplier_space(self.module.base)
        total = module_multiplier_space(self.module)
        if self.matrix.shape != (total.dim, base.dim):
            raise NotASection("section matrix has the wrong shape")
        for k, c in enumerate(self.matrix.columns()):
            if total.algebra_part(c) != base.operator(unit_vector(base.dim, k)):
                raise NotASection(f"section does not project back on basis multiplier {k}")

    def coords(self, R: Matrix) -> Vector:
        c = multiplier_space(self.module.base).coordinates([R])
        if c is None:
            raise NotAMultiplier("R is not a multiplier of the base algebra")
        return self.matrix.apply(c)

    def __call__(self, R: Matrix) -> PairOperator:
        return module_multiplier_space(self.module).pair(self.coords(R))

    @property
    def is_algebra_linear(self) -> bool:
        base = multiplier_space(self.module.base)
        total = module_multiplier_space(self.module)
        for i in range(self.module.base.dim):
            for k in range(base.dim):
                lhs = self.matrix.apply(base.action_matrices[i].column(k))
                rhs = total.action_matrices[i].apply(self.matrix.column(k))
                if lhs != rhs:
                    return False
        return True


def section_from_operators(mod: ModuleOverAlgebra, deltas: Sequence[Matrix]) -> MultiplierSection:
    """Section sending the k-th basis multiplier R_k to (deltas[k], R_k)."""
    base = multiplier_space(mod.base)
    total = module_multiplier_space(mod)
    if len(deltas) != base.dim:
        raise NotASection(f"need {base.dim} module operators, got {len(deltas)}")
    cols = []
    for k, D in enumerate(deltas):
        c = total.coordinates([D, base.basis_ops[k][0]])
        if c is None:
            raise NotASection(f"pair {k} is not a module multiplier")
        cols.append(c)
    mat = Matrix.from_columns(cols, total.dim) if cols else Matrix.zeros(total.dim, 0)
    return MultiplierSection(mod, mat)


def componentwise_section(mod: ModuleOverAlgebra) -> MultiplierSection:
    base = multiplier_space(mod.base)
    return section_from_operators(mod, [componentwise_lift(mod, b[0]) for b in base.basis_ops])


def composition_residual(section: MultiplierSection, R1: Matrix, R2: Matrix) -> Matrix:
    """Delta_{R1 R2} - Delta_{R1} Delta_{R2}; an A-linear operator projecting to 0."""
    return section(R1 @ R2).module_op - section(R1).module_op @ section(R2).module_op


def split_adjoint_multiplier(mod: ModuleOverAlgebra, p: PairOperator) -> tuple[PairOperator, PairOperator]:
    """(Delta, R) = (R, R) + (Delta - R, 0) on the adjoint module."""
    if not mod.is_adjoint:
        raise NotAdjointModule(f"{mod.name} is not the adjoint module of its base")
    if not is_module_multiplier(mod, p):
        raise NotAMultiplier("pair is not a module multiplier")
    R = p.algebra_op
    zero = Matrix.zeros(R.nrows, R.ncols)
    return PairOperator(R, R), PairOperator(p.module_op - R, zero)

