"""Derivations of algebras and modules, the projection onto the algebra
component, its fibers, and connections (sections) with their flags."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping, Sequence

from .algebra import Algebra
from .exactlin import Matrix, Subspace, Vector, unit_vector
from .linsys import LinearSystem
from .module import ModuleOverAlgebra, NotAdjointModule, endomorphisms
from .multiplier import Fiber, componentwise_lift, fiber_of
from .operators import ModuleDerivation, OperatorSpace, PairOperator


class NotADerivation(ValueError):
    pass


class PotentialNotALinear(ValueError):
    pass


def _derivation_system(sys: LinearSystem, a: Algebra, comp: int) -> None:
    n = a.dim
    ident = Matrix.identity(n)
    C = a.mult_matrices
    # X C_i - C_i X - sum_k X[k][i] C_k = 0
    for i in range(n):
        sys.add_equation([(1, ident, comp, C[i]), (-1, C[i], comp, ident)], n, n,
                         column_terms=[(-1, comp, i, C)])


@lru_cache(maxsize=None)
def derivation_space(a: Algebra) -> OperatorSpace:
    sys = LinearSystem([a.dim])
    _derivation_system(sys, a, 0)
    return OperatorSpace(f"D({a.name})", (a.dim,), sys.solution(),
                         tuple((C,) for C in a.mult_matrices), algebra_component=0)


def derivation_algebra(a: Algebra) -> Subspace:
    """{X : X(f*g) = X(f)*g + f*X(g)} as row-major n x n matrices."""
    return derivation_space(a).space


def is_derivation(a: Algebra, X: Matrix) -> bool:
    return derivation_space(a).contains([X])


def bracket(X: Matrix, Y: Matrix) -> Matrix:
    return X.commutator(Y)


def module_bracket(x: PairOperator, y: PairOperator) -> PairOperator:
    return x.bracket(y)


@lru_cache(maxsize=None)
def module_derivation_space(mod: ModuleOverAlgebra) -> OperatorSpace:
    a = mod.base
    m = mod.dim
    sys = LinearSystem([m, a.dim])
    _derivation_system(sys, a, 1)
    ident = Matrix.identity(m)
    A = mod.action_matrices
    # nabla A_i - A_i nabla - sum_k X[k][i] A_k = 0
    for i in range(a.dim):
        sys.add_equation([(1, ident, 0, A[i]), (-1, A[i], 0, ident)], m, m,
                         column_terms=[(-1, 1, i, A)])
    acts = tuple(zip(A, a.mult_matrices))
    return OperatorSpace(f"D({mod.name})", (m, a.dim), sys.solution(), acts, algebra_component=1)


def module_derivations(mod: ModuleOverAlgebra) -> Subspace:
    """Pairs (nabla, X) coordinatised as (vec nabla, vec X)."""
    return module_derivation_space(mod).space


def is_module_derivation(mod: ModuleOverAlgebra, d: PairOperator) -> bool:
    return module_derivation_space(mod).contains(d.as_tuple())


def project_derivation(d: PairOperator) -> Matrix:
    return d.algebra_op


def derivation_fiber(mod: ModuleOverAlgebra, X: Matrix) -> Fiber | None:
    """Preimage of X; its directions are the A-linear endomorphisms of M."""
    if not is_derivation(mod.base, X):
        raise NotADerivation("X is not a derivation of the base algebra")
    return fiber_of(module_derivation_space(mod), X)


def endomorphism_embedding(mod: ModuleOverAlgebra) -> Subspace:
    """Pairs (rho, 0) with rho in End_A(M), inside the module-derivation coordinates."""
    n = mod.base.dim
    pad = (0,) * (n * n)
    return Subspace.span([b + pad for b in endomorphisms(mod).basis],
                         mod.dim ** 2 + n * n)


def derivation_injection_free(mod: ModuleOverAlgebra, X: Matrix) -> ModuleDerivation:
    if not is_derivation(mod.base, X):
        raise NotADerivation("X is not a derivation of the base algebra")
    return PairOperator(componentwise_lift(mod, X), X)


@dataclass(frozen=True)
class ConnectionSection:
    """A linear section of the derivation projection.

    Column ``k`` of ``matrix`` holds the module-derivation coordinates of the
    image of the ``k``-th basis derivation.  The flags are computed, never
    declared by the caller.
    """

    module: ModuleOverAlgebra
    matrix: Matrix

    def __post_init__(self):
        base = derivation_space(self.module.base)
        total = module_derivation_space(self.module)
        if self.matrix.shape != (total.dim, base.dim):
            raise ValueError("connection matrix has the wrong shape")
        for k, c in enumerate(self.matrix.columns()):
            if total.algebra_part(c) != base.operator(unit_vector(base.dim, k)):
                raise ValueError(f"not a section: basis derivation {k} is not recovered")

    def coords(self, X: Matrix) -> Vector:
        c = derivation_space(self.module.base).coordinates([X])
        if c is None:
            raise NotADerivation("X is not a derivation of the base algebra")
        return self.matrix.apply(c)

    def __call__(self, X: Matrix) -> PairOperator:
        return module_derivation_space(self.module).pair(self.coords(X))

    @property
    def is_algebra_linear(self) -> bool:
        base = derivation_space(self.module.base)
        total = module_derivation_space(self.module)
        for i in range(self.module.base.dim):
            for k in range(base.dim):
                lhs = self.matrix.apply(base.action_matrices[i].column(k))
                rhs = total.action_matrices[i].apply(self.matrix.column(k))
                if lhs != rhs:
                    return False
        return True

    def curvature(self, j: int, k: int) -> Matrix:
        """[nabla_j, nabla_k] - nabla_[X_j, X_k] on basis derivations j, k."""
        base = derivation_space(self.module.base)
        total = module_derivation_space(self.module)
        xj, xk = self.matrix.column(j), self.matrix.column(k)
        lhs = total.pair(total.bracket(xj, xk))
        rhs = total.pair(self.matrix.apply(base.bracket(unit_vector(base.dim, j),
                                                        unit_vector(base.dim, k))))
        return (lhs - rhs).module_op

    @property
    def is_lie(self) -> bool:
        d = derivation_space(self.module.base).dim
        return all(self.curvature(j, k).is_zero() for j in range(d) for k in range(j + 1, d))

    @property
    def flags(self) -> dict[str, bool]:
        return {"F-linear": True, "A-linear": self.is_algebra_linear, "Lie": self.is_lie,
                "A-Lie": self.is_algebra_linear and self.is_lie}


def connection_from_operators(mod: ModuleOverAlgebra, nablas: Sequence[Matrix]) -> ConnectionSection:
    base = derivation_space(mod.base)
    total = module_derivation_space(mod)
    if len(nablas) != base.dim:
        raise ValueError(f"need {base.dim} module operators, got {len(nablas)}")
    cols = []
    for k, N in enumerate(nablas):
        c = total.coordinates([N, base.basis_ops[k][0]])
        if c is None:
            raise NotADerivation(f"pair {k} is not a module derivation")
        cols.append(c)
    mat = Matrix.from_columns(cols, total.dim) if cols else Matrix.zeros(total.dim, 0)
    return ConnectionSection(mod, mat)


def connection_from_potential(mod: ModuleOverAlgebra,
                              potential: Mapping[int, Matrix] | Sequence[Matrix] | None = None
                              ) -> ConnectionSection:
    """Componentwise lift plus an End_A(M)-valued potential on the basis derivations.

    ``potential`` maps basis-derivation indices to m x m matrices; missing
    indices mean zero.
    """
    base = derivation_space(mod.base)
    m = mod.dim
    if potential is None:
        potential = {}
    if not isinstance(potential, Mapping):
        potential = dict(enumerate(potential))
    ends = endomorphisms(mod)
    nablas = []
    for k in range(base.dim):
        P = potential.get(k, Matrix.zeros(m, m))
        if P.shape != (m, m):
            raise PotentialNotALinear(f"potential value {k} has shape {P.shape}")
        if not ends.contains(P.flatten()):
            raise PotentialNotALinear(f"potential value {k} is not A-linear")
        nablas.append(componentwise_lift(mod, base.basis_ops[k][0]) + P)
    extra = set(potential) - set(range(base.dim))
    if extra:
        raise PotentialNotALinear(f"potential indices out of range: {sorted(extra)}")
    return connection_from_operators(mod, nablas)


def split_adjoint_derivation(mod: ModuleOverAlgebra, d: PairOperator) -> tuple[PairOperator, PairOperator]:
    """(nabla, X) = (X, X) + (nabla - X, 0) on the adjoint module."""
    if not mod.is_adjoint:
        raise NotAdjointModule(f"{mod.name} is not the adjoint module of its base")
    if not is_module_derivation(mod, d):
        raise NotADerivation("pair is not a module derivation")
    X = d.algebra_op
    zero = Matrix.zeros(X.nrows, X.ncols)
    return PairOperator(X, X), PairOperator(d.module_op - X, zero)
