"""Finite-dimensional modules over an :class:`~modan.algebra.Algebra`."""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .algebra import Algebra, AlgebraError
from .exactlin import Matrix, Subspace, Vector, lincomb, nullspace_of_rows, vec, zero_vector
from .linsys import LinearSystem


class NotAModule(AlgebraError):
    def __init__(self, i: int, j: int, k: int):
        super().__init__(f"b{i}*(b{j}*m{k}) != (b{i}*b{j})*m{k}")
        self.witness = (i, j, k)


class NotFree(AlgebraError):
    pass


class NotAdjointModule(AlgebraError):
    pass


class ModuleOverAlgebra:
    """An A-module with F-basis ``basis``.

    ``action[i][j]`` holds the coordinates of ``(algebra basis i)*(module basis j)``.
    ``free_rank`` is set only for modules built by :func:`free_module`.
    """

    def __init__(self, base: Algebra, name: str, basis: Sequence[str],
                 action: Sequence[Sequence[Sequence]], free_rank: int | None = None):
        self.base = base
        self.name = name
        self.basis = tuple(basis)
        n, m = base.dim, len(self.basis)
        if len(action) != n or any(len(row) != m for row in action):
            raise AlgebraError(f"action tensor must be {n}x{m}x{m}")
        self.action: tuple[tuple[Vector, ...], ...] = tuple(
            tuple(vec(p) for p in row) for row in action
        )
        if any(len(p) != m for row in self.action for p in row):
            raise AlgebraError(f"action tensor must be {n}x{m}x{m}")
        self.free_rank = free_rank
        self._check_compatibility()

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __repr__(self) -> str:
        return f"ModuleOverAlgebra({self.name!r}, dim={self.dim}, base={self.base.name!r})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, ModuleOverAlgebra):
            return NotImplemented
        return (self.base == other.base and self.basis == other.basis
                and self.action == other.action)

    def __hash__(self) -> int:
        return hash((self.base, self.basis, self.action))

    def _check_compatibility(self) -> None:
        n, m = self.base.dim, self.dim
        a, c = self.action, self.base.products
        for i in range(n):
            for j in range(n):
                for k in range(m):
                    left = lincomb(a[j][k], [a[i][p] for p in range(m)], m)
                    right = lincomb(c[i][j], [a[p][k] for p in range(n)], m)
                    if left != right:
                        raise NotAModule(i, j, k)

    @cached_property
    def action_matrices(self) -> tuple[Matrix, ...]:
        m = self.dim
        return tuple(Matrix.from_columns(self.action[i], m) for i in range(self.base.dim))

    def act_matrix(self, f: Sequence) -> Matrix:
        f = self.base.element(f)
        m = self.dim
        out = Matrix.zeros(m, m)
        for c, A in zip(f, self.action_matrices):
            if c:
                out = out + A.scale(c)
        return out

    def act(self, f: Sequence, x: Sequence) -> Vector:
        f = self.base.element(f)
        x = vec(x)
        m = self.dim
        out = [Fraction(0)] * m
        for i, a in enumerate(f):
            if not a:
                continue
            for j, b in enumerate(x):
                if b:
                    for k, v in enumerate(self.action[i][j]):
                        if v:
                            out[k] += a * b * v
        return tuple(out)

    def zero(self) -> Vector:
        return zero_vector(self.dim)

    @property
    def is_adjoint(self) -> bool:
        return self.basis == self.base.basis and self.action == self.base.products


def validate_module(base: Algebra, action: Sequence, name: str = "M",
                    basis: Sequence[str] | None = None) -> ModuleOverAlgebra:
    m = len(action[0]) if action else 0
    if basis is None:
        basis = [f"m{j}" for j in range(m)]
    return ModuleOverAlgebra(base, name, basis, action)


def adjoint_module(base: Algebra) -> ModuleOverAlgebra:
    return ModuleOverAlgebra(base, f"ad({base.name})", base.basis, base.products, free_rank=1)


def free_module(base: Algebra, rank: int, name: str | None = None) -> ModuleOverAlgebra:
    """Free module of the given rank with componentwise (block-diagonal) action.

    Over a non-unital base the generators do not span the result as an
    A-module; the F-dimension is still ``rank * dim(base)``.
    """
    if rank < 0:
        raise ValueError("rank must be non-negative")
    n = base.dim
    m = n * rank
    if rank == 1:
        basis = list(base.basis)
    else:
        basis = [f"b{r + 1}.{s}" for r in range(rank) for s in base.basis]
    action = []
    for i in range(n):
        row = []
        for r in range(rank):
            for j in range(n):
                out = [Fraction(0)] * m
                out[r * n:(r + 1) * n] = base.products[i][j]
                row.append(out)
        action.append(row)
    return ModuleOverAlgebra(base, name or f"{base.name}^{rank}", basis, action, free_rank=rank)


def ann_of_algebra_in_module(mod: ModuleOverAlgebra) -> Subspace:
    """{M : f*M = 0 for every f}."""
    rows = [list(r) for A in mod.action_matrices for r in A.rows]
    return nullspace_of_rows(rows, mod.dim)


def ann_of_module_in_algebra(mod: ModuleOverAlgebra) -> Subspace:
    """{f : f*M = 0 for every M}."""
    n, m = mod.base.dim, mod.dim
    flats = [A.flatten() for A in mod.action_matrices]
    rows = [[flats[i][e] for i in range(n)] for e in range(m * m)]
    return nullspace_of_rows(rows, n)


def endomorphisms(mod: ModuleOverAlgebra) -> Subspace:
    """End_A(M) as a subspace of row-major m x m matrices."""
    m = mod.dim
    sys = LinearSystem([m])
    for A in mod.action_matrices:
        sys.add_commutator(0, A)
    return sys.solution()


def hom_into_annihilator(mod: ModuleOverAlgebra) -> Subspace:
    """A-linear maps M -> ann_M(A), as row-major m x m matrices."""
    m = mod.dim
    sys = LinearSystem([m])
    ident = Matrix.identity(m)
    for A in mod.action_matrices:
        sys.add_commutator(0, A)
        sys.add_equation([(1, A, 0, ident)], m, m)
    return sys.solution()
