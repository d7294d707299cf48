"""Finite-dimensional commutative associative algebras over the rationals."""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .exactlin import (
    Matrix,
    Subspace,
    Vector,
    lincomb,
    nullspace_of_rows,
    solve,
    unit_vector,
    vec,
    zero_vector,
)


class AlgebraError(ValueError):
    pass


class NotCommutative(AlgebraError):
    def __init__(self, i: int, j: int):
        super().__init__(f"basis products {i}*{j} and {j}*{i} differ")
        self.witness = (i, j)


class NotAssociative(AlgebraError):
    def __init__(self, i: int, j: int, k: int):
        super().__init__(f"(b{i}*b{j})*b{k} != b{i}*(b{j}*b{k})")
        self.witness = (i, j, k)


class NoUnit(AlgebraError):
    pass


class Algebra:
    """A commutative associative algebra given by structure constants.

    ``products[i][j]`` is the coordinate vector of ``basis_i * basis_j``.
    Both axioms are checked on construction, so every instance is valid.
    """

    def __init__(self, name: str, basis: Sequence[str], products: Sequence[Sequence[Sequence]]):
        self.name = name
        self.basis = tuple(basis)
        n = len(self.basis)
        if len(products) != n or any(len(row) != n for row in products):
            raise AlgebraError(f"structure tensor must be {n}x{n}x{n}")
        self.products: tuple[tuple[Vector, ...], ...] = tuple(
            tuple(vec(p) for p in row) for row in products
        )
        if any(len(p) != n for row in self.products for p in row):
            raise AlgebraError(f"structure tensor must be {n}x{n}x{n}")
        self._check_axioms()

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __repr__(self) -> str:
        return f"Algebra({self.name!r}, dim={self.dim})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Algebra):
            return NotImplemented
        return self.basis == other.basis and self.products == other.products

    def __hash__(self) -> int:
        return hash((self.basis, self.products))

    def _check_axioms(self) -> None:
        n = self.dim
        c = self.products
        for i in range(n):
            for j in range(i + 1, n):
                if c[i][j] != c[j][i]:
                    raise NotCommutative(i, j)
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    left = lincomb(c[i][j], [c[p][k] for p in range(n)], n)
                    right = lincomb(c[j][k], [c[i][p] for p in range(n)], n)
                    if left != right:
                        raise NotAssociative(i, j, k)

    def zero(self) -> Vector:
        return zero_vector(self.dim)

    def element(self, coords: Sequence) -> Vector:
        v = vec(coords)
        if len(v) != self.dim:
            raise AlgebraError(f"element needs {self.dim} coordinates")
        return v

    def basis_element(self, i: int) -> Vector:
        return unit_vector(self.dim, i)

    def mul(self, f: Sequence[Fraction], g: Sequence[Fraction]) -> Vector:
        n = self.dim
        out = [Fraction(0)] * n
        for i, a in enumerate(f):
            if not a:
                continue
            for j, b in enumerate(g):
                if not b:
                    continue
                ab = a * b
                for k, ck in enumerate(self.products[i][j]):
                    if ck:
                        out[k] += ab * ck
        return tuple(out)

    @cached_property
    def mult_matrices(self) -> tuple[Matrix, ...]:
        """Matrix of multiplication by each basis element."""
        n = self.dim
        return tuple(Matrix.from_columns(self.products[i], n) if n else Matrix.zeros(0, 0)
                     for i in range(n))

    def ad(self, f: Sequence) -> Matrix:
        f = self.element(f)
        n = self.dim
        if n == 0:
            return Matrix.zeros(0, 0)
        return Matrix.from_columns([self.mul(f, unit_vector(n, j)) for j in range(n)], n)

    def ad_stack(self) -> Matrix:
        """The linear map f -> vec(ad_f), as an (n*n) x n matrix."""
        n = self.dim
        cols = [self.mult_matrices[i].flatten() for i in range(n)]
        return Matrix.from_columns(cols, n * n) if n else Matrix.zeros(0, 0)


def validate_algebra(products: Sequence, name: str = "A", basis: Sequence[str] | None = None) -> Algebra:
    n = len(products)
    if basis is None:
        basis = [f"b{i}" for i in range(n)]
    return Algebra(name, basis, products)


def annihilator(a: Algebra) -> Subspace:
    """{f : f*g = 0 for every g}."""
    n = a.dim
    # f*b_j = sum_i f_i c[i][j]; one row per (j, k)
    rows = [[a.products[i][j][k] for i in range(n)] for j in range(n) for k in range(n)]
    return nullspace_of_rows(rows, n)


def find_unit(a: Algebra) -> Vector | None:
    n = a.dim
    if n == 0:
        return ()
    rows = []
    rhs = []
    for j in range(n):
        for k in range(n):
            rows.append([a.products[i][j][k] for i in range(n)])
            rhs.append(Fraction(int(j == k)))
    return solve(Matrix(rows, n), rhs)


def ad_map(a: Algebra, f: Sequence) -> Matrix:
    return a.ad(f)
