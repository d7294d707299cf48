"""Linear constraint systems whose unknowns are tuples of square matrices.

Unknown component ``c`` is an ``sizes[c] x sizes[c]`` matrix; the system's
coordinates concatenate the row-major vectorisations of all components.
Every solution space in the package (multipliers, derivations, their module
pairs, A-linear endomorphisms) is the kernel of one of these systems.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from typing import Sequence

from .exactlin import Matrix, Subspace, _Echelon, _kernel_from_echelon, to_fraction


class LinearSystem:
    def __init__(self, sizes: Sequence[int]):
        self.sizes = tuple(sizes)
        self.offsets = []
        off = 0
        for s in self.sizes:
            self.offsets.append(off)
            off += s * s
        self.nvars = off
        self._ech = _Echelon(self.nvars)

    def index(self, comp: int, k: int, l: int) -> int:
        return self.offsets[comp] + k * self.sizes[comp] + l

    def add_equation(self, terms: Sequence[tuple], out_rows: int, out_cols: int,
                     column_terms: Sequence[tuple] = ()) -> None:
        """Impose ``sum coef*P@X_comp@Q + sum coef*sum_k X_comp[k][i]*B_k = 0``.

        ``terms`` holds ``(coef, P, comp, Q)``; ``column_terms`` holds
        ``(coef, comp, i, [B_0, B_1, ...])``.
        """
        rows: dict[tuple[int, int], dict[int, Fraction]] = defaultdict(lambda: defaultdict(Fraction))
        for coef, P, comp, Q in terms:
            coef = to_fraction(coef)
            s = self.sizes[comp]
            for r in range(out_rows):
                prow = P.rows[r]
                pk = [(k, a) for k, a in enumerate(prow) if a]
                if not pk:
                    continue
                for c in range(out_cols):
                    ql = [(l, Q.rows[l][c]) for l in range(s) if Q.rows[l][c]]
                    if not ql:
                        continue
                    row = rows[(r, c)]
                    for k, a in pk:
                        for l, b in ql:
                            row[self.index(comp, k, l)] += coef * a * b
        for coef, comp, i, mats in column_terms:
            coef = to_fraction(coef)
            for k, B in enumerate(mats):
                for r in range(out_rows):
                    for c in range(out_cols):
                        v = B.rows[r][c]
                        if v:
                            rows[(r, c)][self.index(comp, k, i)] += coef * v
        for row in rows.values():
            self._ech.add(dict(row))

    def add_commutator(self, comp: int, C: Matrix) -> None:
        """X_comp @ C - C @ X_comp = 0."""
        s = self.sizes[comp]
        ident = Matrix.identity(s)
        self.add_equation([(1, ident, comp, C), (-1, C, comp, ident)], s, s)

    def fix_zero(self, comp: int) -> None:
        for k in range(self.sizes[comp]):
            for l in range(self.sizes[comp]):
                self._ech.add({self.index(comp, k, l): Fraction(1)})

    def solution(self) -> Subspace:
        rows = self._ech.dense_rows()
        return Subspace.span(_kernel_from_echelon(rows, self._ech.pivots, self.nvars), self.nvars)


def split_vector(v: Sequence[Fraction], sizes: Sequence[int]) -> tuple[Matrix, ...]:
    out = []
    off = 0
    for s in sizes:
        out.append(Matrix.from_flat(v[off:off + s * s], s, s))
        off += s * s
    return tuple(out)


def join_matrices(mats: Sequence[Matrix]) -> tuple[Fraction, ...]:
    return tuple(a for M in mats for a in M.flatten())
