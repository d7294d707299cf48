"""Multiplier cochains, their tensor product, the Hochschild differential and
its cohomology.

A degree-q cochain is stored as its full value array: one coordinate vector
in the target multiplier space for every q-tuple of source basis indices,
ordered lexicographically.  A-multilinearity is imposed as linear
constraints on that array instead of building the tensor product module.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence, Union

from .algebra import Algebra
from .exactlin import Matrix, Subspace, Vector, echelon_rows, is_zero, nullspace_of_rows, vec
from .module import ModuleOverAlgebra
from .multiplier import module_multiplier_space, multiplier_space
from .operators import OperatorSpace

log = logging.getLogger(__name__)

Carrier = Union[Algebra, ModuleOverAlgebra]


class MixedBaseAlgebra(ValueError):
    pass


class NotComposable(ValueError):
    pass


class NonzeroResidual(ValueError):
    def __init__(self, pair: tuple[int, int]):
        super().__init__(f"residual is nonzero on basis pair {pair}")
        self.pair = pair


class KappaNotALinear(ValueError):
    pass


class NotMultilinear(ValueError):
    pass


def base_algebra(obj: Carrier) -> Algebra:
    return obj if isinstance(obj, Algebra) else obj.base


def multiplier_carrier(obj: Carrier) -> OperatorSpace:
    if isinstance(obj, Algebra):
        return multiplier_space(obj)
    return module_multiplier_space(obj)


@dataclass(frozen=True)
class Cochain:
    degree: int
    dim_source: int
    dim_target: int
    values: Vector

    def __post_init__(self):
        if len(self.values) != self.dim_source ** self.degree * self.dim_target:
            raise ValueError("cochain value array has the wrong length")

    def index(self, t: Sequence[int]) -> int:
        i = 0
        for a in t:
            i = i * self.dim_source + a
        return i * self.dim_target

    def __call__(self, *t: int) -> Vector:
        i = self.index(t)
        return self.values[i:i + self.dim_target]

    def is_zero(self) -> bool:
        return is_zero(self.values)


def _compose(table, x: Sequence[Fraction], y: Sequence[Fraction], dim: int) -> list[Fraction]:
    out = [Fraction(0)] * dim
    for a, xa in enumerate(x):
        if not xa:
            continue
        for b, yb in enumerate(y):
            if not yb:
                continue
            for k, t in enumerate(table[a][b]):
                if t:
                    out[k] += xa * yb * t
    return out


class HochschildComplex:
    """Cochains over M(U) with values in M(V) and the differential built from kappa."""

    def __init__(self, U: Carrier, V: Carrier, kappa: Matrix | None = None):
        if base_algebra(U) != base_algebra(V):
            raise MixedBaseAlgebra("source and target live over different algebras")
        self.U, self.V = U, V
        self.src = multiplier_carrier(U)
        self.dst = multiplier_carrier(V)
        if kappa is None:
            if U != V:
                raise ValueError("the identity kappa needs equal source and target")
            kappa = Matrix.identity(self.src.dim)
        if kappa.shape != (self.dst.dim, self.src.dim):
            raise ValueError(f"kappa must be {self.dst.dim}x{self.src.dim}")
        self.kappa = kappa
        for L, K in zip(self.src.action_matrices, self.dst.action_matrices):
            if kappa @ L != K @ kappa:
                raise KappaNotALinear("kappa does not commute with the algebra action")
        self.warnings: list[str] = []
        self._space_cache: dict[int, Subspace] = {}

    @property
    def du(self) -> int:
        return self.src.dim

    @property
    def dv(self) -> int:
        return self.dst.dim

    def tuples(self, q: int):
        return itertools.product(range(self.du), repeat=q)

    def ambient(self, q: int) -> int:
        return self.du ** q * self.dv if q >= 0 else 0

    def space(self, q: int) -> Subspace:
        if q < 0:
            return Subspace.zero(0)
        if q not in self._space_cache:
            self._space_cache[q] = self._build_space(q)
        return self._space_cache[q]

    def _build_space(self, q: int) -> Subspace:
        du, dv = self.du, self.dv
        n = self.ambient(q)
        if q == 0:
            return Subspace.full(dv)
        # c(.., b_i eta_a, ..) = b_i c(.., eta_a, ..) in every slot s
        rows = []
        Ls, Ks = self.src.action_matrices, self.dst.action_matrices
        for L, K in zip(Ls, Ks):
            for t in self.tuples(q):
                base = self._flat(t)
                for s in range(q):
                    col = L.column(t[s])
                    for k in range(dv):
                        row: dict[int, Fraction] = {}
                        for b, w in enumerate(col):
                            if w:
                                j = self._flat(t[:s] + (b,) + t[s + 1:]) + k
                                row[j] = row.get(j, 0) + w
                        for l, w in enumerate(K.rows[k]):
                            if w:
                                row[base + l] = row.get(base + l, 0) - w
                        if any(row.values()):
                            rows.append(_dense(row, n))
        return nullspace_of_rows(rows, n)

    def _flat(self, t: Sequence[int]) -> int:
        i = 0
        for a in t:
            i = i * self.du + a
        return i * self.dv

    def cochain(self, q: int, values: Sequence) -> Cochain:
        return Cochain(q, self.du, self.dv, vec(values))

    def basis_cochains(self, q: int) -> list[Cochain]:
        return [self.cochain(q, b) for b in self.space(q).basis]

    def from_coords(self, q: int, coords: Sequence) -> Cochain:
        return self.cochain(q, self.space(q).element(coords))

    def contains(self, c: Cochain) -> bool:
        return self.space(c.degree).contains(c.values)

    # -- operations ---------------------------------------------------------

    @cached_property
    def _kcols(self) -> list[Vector]:
        return self.kappa.columns()

    def _dst_compose(self, x, y) -> list[Fraction]:
        return _compose(self.dst.composition_table, x, y, self.dv)

    def delta(self, c: Cochain) -> Cochain:
        q = c.degree
        dv = self.dv
        out: list[Fraction] = []
        src_comp = self.src.composition_table
        for t in self.tuples(q + 1):
            acc = self._dst_compose(self._kcols[t[0]], c(*t[1:]))
            for r in range(1, q + 1):
                sign = -1 if r % 2 else 1
                w = src_comp[t[r - 1]][t[r]]
                for b, wb in enumerate(w):
                    if wb:
                        val = c(*(t[:r - 1] + (b,) + t[r + 1:]))
                        for k in range(dv):
                            acc[k] += sign * wb * val[k]
            tail = self._dst_compose(c(*t[:q]), self._kcols[t[q]])
            sign = -1 if (q + 1) % 2 else 1
            for k in range(dv):
                acc[k] += sign * tail[k]
            out.extend(acc)
        return self.cochain(q + 1, out)

    def tensor(self, c1: Cochain, c2: Cochain) -> Cochain:
        if (c1.dim_source, c1.dim_target) != (self.du, self.dv) or \
                (c2.dim_source, c2.dim_target) != (self.du, self.dv):
            raise NotComposable("cochains belong to a different complex")
        p, q = c1.degree, c2.degree
        out: list[Fraction] = []
        for t in self.tuples(p + q):
            out.extend(self._dst_compose(c1(*t[:p]), c2(*t[p:])))
        return self.cochain(p + q, out)

    def residual(self) -> Cochain:
        """kappa(a) kappa(b) - kappa(a b) on basis pairs."""
        out: list[Fraction] = []
        comp = self.src.composition_table
        for a, b in self.tuples(2):
            lhs = self._dst_compose(self._kcols[a], self._kcols[b])
            rhs = self.kappa.apply(comp[a][b])
            out.extend(x - y for x, y in zip(lhs, rhs))
        return self.cochain(2, out)

    def delta_matrix(self, q: int) -> Matrix:
        """Matrix of delta from C^q to C^(q+1) in the canonical bases."""
        dst = self.space(q + 1)
        cols = []
        for c in self.basis_cochains(q):
            coords = dst.coordinates(self.delta(c).values)
            if coords is None:
                raise NotMultilinear(f"delta of a degree-{q} basis cochain left C^{q + 1}")
            cols.append(coords)
        return Matrix.from_columns(cols, dst.dim) if cols else Matrix.zeros(dst.dim, 0)

    def check_membership(self, c: Cochain) -> bool:
        ok = self.contains(c)
        if not ok:
            msg = f"degree-{c.degree} cochain is not A-multilinear"
            self.warnings.append(msg)
            log.warning(msg)
        return ok

    def cohomology(self, q_max: int) -> list[dict]:
        """Rows ``{q, dim, rank, H}`` for 0 <= q <= q_max.

        Ranks are taken on the value arrays, so they stay meaningful even if
        some image fails the multilinearity check (reported in ``warnings``).
        """
        res = self.residual()
        for a, b in self.tuples(2):
            if not is_zero(res(a, b)):
                raise NonzeroResidual((a, b))
        rows = []
        prev_rank = 0
        for q in range(q_max + 1):
            images = [self.delta(c) for c in self.basis_cochains(q)]
            for img in images:
                self.check_membership(img)
                if not self.delta(img).is_zero():
                    raise AssertionError(f"delta o delta is nonzero in degree {q}")
            dim = self.space(q).dim
            rk = len(echelon_rows([img.values for img in images], self.ambient(q + 1))[0])
            rows.append({"q": q, "dim": dim, "rank": rk, "H": dim - rk - prev_rank})
            prev_rank = rk
        return rows


def _dense(row: dict[int, Fraction], n: int) -> list[Fraction]:
    out = [Fraction(0)] * n
    for k, v in row.items():
        out[k] = v
    return out


def cochain_space(U: Carrier, V: Carrier, q: int) -> Subspace:
    kappa = None if U == V else Matrix.zeros(multiplier_carrier(V).dim, multiplier_carrier(U).dim)
    return HochschildComplex(U, V, kappa).space(q)


def hochschild_cohomology(U: Carrier, V: Carrier, kappa: Matrix | None, q_max: int) -> list[dict]:
    return HochschildComplex(U, V, kappa).cohomology(q_max)
