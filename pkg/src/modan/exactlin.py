"""Exact rational linear algebra.

Everything downstream reduces to kernels and spans of rational matrices, so
this module keeps one canonical representation: a :class:`Subspace` stores
the reduced row-echelon basis of its span, which makes equal subspaces
compare equal.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Vector = tuple[Fraction, ...]


class LinAlgError(ValueError):
    pass


class DimensionMismatch(LinAlgError):
    pass


class ContainmentError(LinAlgError):
    pass


class NotInvertible(LinAlgError):
    pass


def to_fraction(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        raise TypeError("floats are not accepted; use 'p/q' strings")
    return Fraction(value)


def format_fraction(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def vec(values: Iterable) -> Vector:
    return tuple(to_fraction(v) for v in values)


def zero_vector(n: int) -> Vector:
    return (Fraction(0),) * n


def unit_vector(n: int, i: int) -> Vector:
    v = [Fraction(0)] * n
    v[i] = Fraction(1)
    return tuple(v)


def vadd(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    return tuple(a + b for a, b in zip(u, v, strict=True))


def vsub(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    return tuple(a - b for a, b in zip(u, v, strict=True))


def vscale(c, v: Sequence[Fraction]) -> Vector:
    c = to_fraction(c)
    return tuple(c * a for a in v)


def is_zero(v: Iterable[Fraction]) -> bool:
    return all(a == 0 for a in v)


def lincomb(coeffs: Sequence[Fraction], vectors: Sequence[Sequence[Fraction]], n: int) -> Vector:
    out = [Fraction(0)] * n
    for c, v in zip(coeffs, vectors, strict=True):
        if c == 0:
            continue
        for k, a in enumerate(v):
            if a:
                out[k] += c * a
    return tuple(out)


class Matrix:
    """Dense immutable rational matrix.

    Linear maps follow the column convention: column ``j`` holds the image of
    the ``j``-th basis vector.
    """

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        self.rows: tuple[Vector, ...] = tuple(vec(r) for r in rows)
        self.nrows = len(self.rows)
        if ncols is None:
            if not self.rows:
                raise LinAlgError("column count of an empty matrix must be given")
            ncols = len(self.rows[0])
        self.ncols = ncols
        if any(len(r) != ncols for r in self.rows):
            raise DimensionMismatch("ragged matrix rows")

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> Matrix:
        return cls([zero_vector(ncols) for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, n: int) -> Matrix:
        return cls([unit_vector(n, i) for i in range(n)], n)

    @classmethod
    def from_flat(cls, flat: Sequence, nrows: int, ncols: int) -> Matrix:
        if len(flat) != nrows * ncols:
            raise DimensionMismatch(f"expected {nrows * ncols} entries, got {len(flat)}")
        return cls([flat[i * ncols:(i + 1) * ncols] for i in range(nrows)], ncols)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: int) -> Matrix:
        cols = [vec(c) for c in columns]
        return cls([[c[i] for c in cols] for i in range(nrows)], len(cols))

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def flatten(self) -> Vector:
        return tuple(a for r in self.rows for a in r)

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.ncols)]

    def transpose(self) -> Matrix:
        return Matrix([self.column(j) for j in range(self.ncols)], self.nrows)

    T = property(transpose)

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.shape, self.rows))

    def __repr__(self) -> str:
        body = ", ".join("[" + ", ".join(format_fraction(a) for a in r) + "]" for r in self.rows)
        return f"Matrix([{body}], {self.ncols})"

    def _check_same(self, other: Matrix) -> None:
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} vs {other.shape}")

    def __add__(self, other: Matrix) -> Matrix:
        self._check_same(other)
        return Matrix([vadd(a, b) for a, b in zip(self.rows, other.rows)], self.ncols)

    def __sub__(self, other: Matrix) -> Matrix:
        self._check_same(other)
        return Matrix([vsub(a, b) for a, b in zip(self.rows, other.rows)], self.ncols)

    def __neg__(self) -> Matrix:
        return Matrix([vscale(-1, r) for r in self.rows], self.ncols)

    def scale(self, c) -> Matrix:
        return Matrix([vscale(c, r) for r in self.rows], self.ncols)

    __rmul__ = scale

    def __matmul__(self, other: Matrix) -> Matrix:
        if self.ncols != other.nrows:
            raise DimensionMismatch(f"cannot compose {self.shape} with {other.shape}")
        cols = other.columns()
        out = []
        for r in self.rows:
            nz = [(k, a) for k, a in enumerate(r) if a]
            out.append([sum((a * c[k] for k, a in nz), Fraction(0)) for c in cols])
        return Matrix(out, other.ncols)

    def apply(self, v: Sequence[Fraction]) -> Vector:
        if len(v) != self.ncols:
            raise DimensionMismatch(f"vector of length {len(v)} for {self.shape} matrix")
        nz = [(k, a) for k, a in enumerate(v) if a]
        return tuple(sum((r[k] * a for k, a in nz), Fraction(0)) for r in self.rows)

    def is_zero(self) -> bool:
        return all(is_zero(r) for r in self.rows)

    def commutator(self, other: Matrix) -> Matrix:
        return self @ other - other @ self

    def inverse(self) -> Matrix:
        if self.nrows != self.ncols:
            raise NotInvertible("non-square matrix")
        n = self.nrows
        aug = Matrix([r + unit_vector(n, i) for i, r in enumerate(self.rows)], 2 * n)
        red, pivots, rank = rref(aug)
        if pivots[:n] != list(range(n)) or rank < n:
            raise NotInvertible("matrix is singular")
        return Matrix([r[n:] for r in red.rows[:n]], n)


def block_diag(blocks: Sequence[Matrix]) -> Matrix:
    n = sum(b.nrows for b in blocks)
    m = sum(b.ncols for b in blocks)
    rows: list[list[Fraction]] = []
    off = 0
    for b in blocks:
        for r in b.rows:
            rows.append([Fraction(0)] * off + list(r) + [Fraction(0)] * (m - off - b.ncols))
        off += b.ncols
    return Matrix(rows, m)


# -- echelon machinery -------------------------------------------------------
#
# Rows are kept sparse ({column: value}) while reducing: constraint systems
# built downstream are tall, very redundant, and mostly zeros.


class _Echelon:
    """Incrementally maintained reduced row-echelon form."""

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: dict[int, dict[int, Fraction]] = {}

    def add(self, row: dict[int, Fraction]) -> bool:
        row = {k: v for k, v in row.items() if v}
        for p, prow in self.rows.items():
            c = row.get(p)
            if c:
                for k, v in prow.items():
                    nv = row.get(k, 0) - c * v
                    if nv:
                        row[k] = nv
                    else:
                        row.pop(k, None)
        if not row:
            return False
        piv = min(row)
        inv = 1 / row[piv]
        row = {k: v * inv for k, v in row.items()}
        for prow in self.rows.values():
            c = prow.get(piv)
            if c:
                for k, v in row.items():
                    nv = prow.get(k, 0) - c * v
                    if nv:
                        prow[k] = nv
                    else:
                        prow.pop(k, None)
        self.rows[piv] = row
        return True

    @property
    def pivots(self) -> list[int]:
        return sorted(self.rows)

    def dense_rows(self) -> list[Vector]:
        out = []
        for p in self.pivots:
            r = [Fraction(0)] * self.ncols
            for k, v in self.rows[p].items():
                r[k] = v
            out.append(tuple(r))
        return out


def _sparse(row: Sequence[Fraction]) -> dict[int, Fraction]:
    return {k: to_fraction(v) for k, v in enumerate(row) if v}


def echelon_rows(rows: Iterable[Sequence[Fraction]], ncols: int) -> tuple[list[Vector], list[int]]:
    ech = _Echelon(ncols)
    for r in rows:
        if len(r) != ncols:
            raise DimensionMismatch(f"row of length {len(r)} in a {ncols}-column system")
        ech.add(_sparse(r))
    return ech.dense_rows(), ech.pivots


def rref(m: Matrix) -> tuple[Matrix, list[int], int]:
    """Return ``(R, pivot_columns, rank)`` with ``R`` the unique RREF of ``m``.

    Zero rows are appended so ``R`` keeps the shape of ``m``.
    """
    rows, pivots = echelon_rows(m.rows, m.ncols)
    rank = len(rows)
    rows += [zero_vector(m.ncols)] * (m.nrows - rank)
    return Matrix(rows, m.ncols), pivots, rank


def rank(m: Matrix) -> int:
    return len(echelon_rows(m.rows, m.ncols)[0])


def _kernel_from_echelon(rows: list[Vector], pivots: list[int], ncols: int) -> list[Vector]:
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, p in zip(rows, pivots):
            if r[f]:
                v[p] = -r[f]
        basis.append(tuple(v))
    return basis


def nullspace_of_rows(rows: Iterable[Sequence[Fraction]], ncols: int) -> Subspace:
    """Kernel of the linear system whose constraint rows are ``rows``."""
    red, pivots = echelon_rows(rows, ncols)
    return Subspace.span(_kernel_from_echelon(red, pivots, ncols), ncols)


def kernel_basis(m: Matrix) -> Subspace:
    return nullspace_of_rows(m.rows, m.ncols)


def image_basis(m: Matrix) -> Subspace:
    return Subspace.span(m.columns(), m.nrows)


def solve(m: Matrix, rhs: Sequence[Fraction]) -> Vector | None:
    """One solution of ``m x = rhs`` (free variables set to zero), or None."""
    rhs = vec(rhs)
    if len(rhs) != m.nrows:
        raise DimensionMismatch("right-hand side length")
    aug = [r + (b,) for r, b in zip(m.rows, rhs)]
    red, pivots = echelon_rows(aug, m.ncols + 1)
    if pivots and pivots[-1] == m.ncols:
        return None
    x = [Fraction(0)] * m.ncols
    for r, p in zip(red, pivots):
        x[p] = r[m.ncols]
    return tuple(x)


@dataclass(frozen=True)
class Subspace:
    """A linear subspace of F^ambient_dim stored by its RREF basis."""

    ambient_dim: int
    basis: tuple[Vector, ...]

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> Subspace:
        rows, _ = echelon_rows([vec(v) for v in vectors], ambient_dim)
        return cls(ambient_dim, tuple(rows))

    @classmethod
    def zero(cls, ambient_dim: int) -> Subspace:
        return cls(ambient_dim, ())

    @classmethod
    def full(cls, ambient_dim: int) -> Subspace:
        return cls(ambient_dim, tuple(unit_vector(ambient_dim, i) for i in range(ambient_dim)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> list[int]:
        return [next(k for k, a in enumerate(r) if a) for r in self.basis]

    def coordinates(self, v: Sequence) -> Vector | None:
        """Coordinates of ``v`` in the canonical basis, or None if ``v`` is outside."""
        v = vec(v)
        if len(v) != self.ambient_dim:
            raise DimensionMismatch(f"vector of length {len(v)} in ambient {self.ambient_dim}")
        coords = tuple(v[p] for p in self.pivots)
        if lincomb(coords, self.basis, self.ambient_dim) != v:
            return None
        return coords

    def contains(self, v: Sequence) -> bool:
        return self.coordinates(v) is not None

    def element(self, coords: Sequence) -> Vector:
        return lincomb(vec(coords), self.basis, self.ambient_dim)

    def _check(self, other: Subspace) -> None:
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatch(f"ambient {self.ambient_dim} vs {other.ambient_dim}")

    def is_subspace_of(self, other: Subspace) -> bool:
        self._check(other)
        return all(other.contains(b) for b in self.basis)

    def sum(self, other: Subspace) -> Subspace:
        self._check(other)
        return Subspace.span(self.basis + other.basis, self.ambient_dim)

    __add__ = sum

    def intersect(self, other: Subspace) -> Subspace:
        self._check(other)
        if not self.basis or not other.basis:
            return Subspace.zero(self.ambient_dim)
        # a·A = b·B  <=>  (a, b) in ker [A^T | -B^T]
        k, l = self.dim, other.dim
        rows = [
            [self.basis[i][c] for i in range(k)] + [-other.basis[j][c] for j in range(l)]
            for c in range(self.ambient_dim)
        ]
        ker = nullspace_of_rows(rows, k + l)
        return Subspace.span([self.element(z[:k]) for z in ker.basis], self.ambient_dim)

    __and__ = intersect


def sum_subspaces(a: Subspace, b: Subspace) -> Subspace:
    return a.sum(b)


def intersect(a: Subspace, b: Subspace) -> Subspace:
    return a.intersect(b)


def contains(a: Subspace, v: Sequence) -> bool:
    return a.contains(v)


def quotient_dim(sub: Subspace, sup: Subspace) -> int:
    """dim(sup / sub); raises ContainmentError unless sub is inside sup."""
    if not sub.is_subspace_of(sup):
        raise ContainmentError("subspace is not contained in the superspace")
    return sup.dim - sub.dim
