"""Differential forms on derivation spaces and the Cartan calculus on them.

A degree-q form is stored by its values on strictly increasing q-tuples of
basis derivations of the source; other tuples are recovered by alternation.
Conventions:

* interior product: ``(i_xi w)(x1..x_{q-1}) = q * w(xi, x1..x_{q-1})``
* exterior derivative: the Cartan formula with the ``1/(q+1)`` prefactor
* wedge: ``(p! q! / (p+q)!) * sum over shuffles of sign * phi(I) . w(J)``,
  i.e. the plain average over all permutations, with no binomial factor.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import comb, factorial
from typing import Sequence, Union

from .algebra import Algebra
from .derivation import derivation_space, module_derivation_space
from .exactlin import Matrix, Subspace, Vector, echelon_rows, is_zero, nullspace_of_rows, vec
from .hochschild import KappaNotALinear, MixedBaseAlgebra, base_algebra
from .module import ModuleOverAlgebra
from .operators import OperatorSpace

log = logging.getLogger(__name__)

Carrier = Union[Algebra, ModuleOverAlgebra]


class NonzeroCurvature(ValueError):
    def __init__(self, pair: tuple[int, int]):
        super().__init__(f"curvature is nonzero on basis pair {pair}")
        self.pair = pair


def derivation_carrier(obj: Carrier) -> OperatorSpace:
    if isinstance(obj, Algebra):
        return derivation_space(obj)
    return module_derivation_space(obj)


def _value_actions(obj: Carrier) -> tuple[Matrix, ...]:
    if isinstance(obj, Algebra):
        return obj.mult_matrices
    return obj.action_matrices


def _sort_sign(t: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Sign of the sorting permutation and the sorted tuple; sign 0 on repeats."""
    t = list(t)
    if len(set(t)) != len(t):
        return 0, ()
    sign = 1
    for i in range(len(t)):
        for j in range(i + 1, len(t)):
            if t[i] > t[j]:
                sign = -sign
    return sign, tuple(sorted(t))


@dataclass(frozen=True)
class _SparseMap:
    rows: tuple[tuple[tuple[int, Fraction], ...], ...]

    @classmethod
    def build(cls, rows: list[dict[int, Fraction]], scale: Fraction = Fraction(1)) -> _SparseMap:
        return cls(tuple(tuple((j, scale * c) for j, c in sorted(r.items()) if c) for r in rows))

    def apply(self, v: Sequence[Fraction]) -> Vector:
        return tuple(sum((c * v[j] for j, c in row if v[j]), Fraction(0)) for row in self.rows)


@dataclass(frozen=True, eq=False)
class Form:
    complex: DeRhamComplex
    degree: int
    values: Vector

    def __post_init__(self):
        if len(self.values) != self.complex.ambient(self.degree):
            raise ValueError("form value array has the wrong length")

    def __call__(self, *t: int) -> Vector:
        return self.complex.evaluate(self, t)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Form):
            return NotImplemented
        return (self.complex is other.complex and self.degree == other.degree
                and self.values == other.values)

    __hash__ = None

    def _check(self, other: Form) -> None:
        if self.complex is not other.complex or self.degree != other.degree:
            raise ValueError("forms live in different spaces")

    def __add__(self, other: Form) -> Form:
        self._check(other)
        return Form(self.complex, self.degree, tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other: Form) -> Form:
        self._check(other)
        return Form(self.complex, self.degree, tuple(a - b for a, b in zip(self.values, other.values)))

    def __neg__(self) -> Form:
        return self.scale(-1)

    def scale(self, c) -> Form:
        c = Fraction(c)
        return Form(self.complex, self.degree, tuple(c * a for a in self.values))

    def is_zero(self) -> bool:
        return is_zero(self.values)


class DeRhamComplex:
    """Forms on D(U) with values in V and the Cartan calculus driven by kappa.

    ``kappa`` maps D(U) coordinates to D(V) coordinates; it defaults to the
    identity when U and V coincide and may be omitted when only the form
    spaces are needed.
    """

    def __init__(self, U: Carrier, V: Carrier, kappa: Matrix | None = None):
        if base_algebra(U) != base_algebra(V):
            raise MixedBaseAlgebra("source and target live over different algebras")
        self.U, self.V = U, V
        self.algebra = base_algebra(U)
        self.src = derivation_carrier(U)
        self.tgt = derivation_carrier(V)
        self.dim_values = V.dim
        self.value_actions = _value_actions(V)
        if kappa is None and U == V:
            kappa = Matrix.identity(self.src.dim)
        if kappa is not None:
            if kappa.shape != (self.tgt.dim, self.src.dim):
                raise ValueError(f"kappa must be {self.tgt.dim}x{self.src.dim}")
            for L, K in zip(self.src.action_matrices, self.tgt.action_matrices):
                if kappa @ L != K @ kappa:
                    raise KappaNotALinear("kappa does not commute with the algebra action")
        self.kappa = kappa
        self.warnings: list[str] = []
        self._space_cache: dict[int, Subspace] = {}
        self._tuples: dict[int, tuple[tuple[int, ...], ...]] = {}
        self._index: dict[int, dict[tuple[int, ...], int]] = {}
        self._maps: dict[tuple, _SparseMap] = {}

    # -- layout -------------------------------------------------------------

    @property
    def du(self) -> int:
        return self.src.dim

    def tuples(self, q: int) -> tuple[tuple[int, ...], ...]:
        if q not in self._tuples:
            ts = tuple(itertools.combinations(range(self.du), q)) if q >= 0 else ()
            self._tuples[q] = ts
            self._index[q] = {t: i * self.dim_values for i, t in enumerate(ts)}
        return self._tuples[q]

    def ambient(self, q: int) -> int:
        if q < 0 or q > self.du:
            return 0
        return comb(self.du, q) * self.dim_values

    def _offset(self, q: int, t: tuple[int, ...]) -> int:
        self.tuples(q)
        return self._index[q][t]

    def space(self, q: int) -> Subspace:
        if q not in self._space_cache:
            self._space_cache[q] = self._build_space(q)
        return self._space_cache[q]

    def _build_space(self, q: int) -> Subspace:
        n = self.ambient(q)
        if n == 0:
            return Subspace.zero(0)
        if q == 0:
            return Subspace.full(n)
        dv = self.dim_values
        rows = []
        # w(b_i xi_a, rest) = b_i w(xi_a, rest); alternation makes slot 0 enough
        for L, K in zip(self.src.action_matrices, self.value_actions):
            for a in range(self.du):
                col = L.column(a)
                for rest in itertools.combinations(range(self.du), q - 1):
                    sa, ta = _sort_sign((a,) + rest)
                    for k in range(dv):
                        row: dict[int, Fraction] = {}
                        for b, w in enumerate(col):
                            if not w:
                                continue
                            sb, tb = _sort_sign((b,) + rest)
                            if sb:
                                j = self._offset(q, tb) + k
                                row[j] = row.get(j, 0) + sb * w
                        if sa:
                            base = self._offset(q, ta)
                            for l, w in enumerate(K.rows[k]):
                                if w:
                                    row[base + l] = row.get(base + l, 0) - sa * w
                        if any(row.values()):
                            dense = [Fraction(0)] * n
                            for j, v in row.items():
                                dense[j] = v
                            rows.append(dense)
        return nullspace_of_rows(rows, n)

    # -- forms ----------------------------------------------------------------

    def form(self, q: int, values: Sequence) -> Form:
        return Form(self, q, vec(values))

    def zero(self, q: int) -> Form:
        return Form(self, q, (Fraction(0),) * self.ambient(q))

    def basis_forms(self, q: int) -> list[Form]:
        return [self.form(q, b) for b in self.space(q).basis]

    def from_coords(self, q: int, coords: Sequence) -> Form:
        return self.form(q, self.space(q).element(coords))

    def contains(self, w: Form) -> bool:
        if self.ambient(w.degree) == 0:
            return True
        return self.space(w.degree).contains(w.values)

    def evaluate(self, w: Form, t: Sequence[int]) -> Vector:
        dv = self.dim_values
        if len(t) != w.degree:
            raise ValueError(f"degree-{w.degree} form evaluated on {len(t)} arguments")
        sign, st = _sort_sign(t)
        if sign == 0 or w.degree > self.du:
            return (Fraction(0),) * dv
        i = self._offset(w.degree, st)
        vals = w.values[i:i + dv]
        return vals if sign > 0 else tuple(-a for a in vals)

    # -- derivation data ------------------------------------------------------

    def _need_kappa(self) -> Matrix:
        if self.kappa is None:
            raise ValueError("this operation needs kappa")
        return self.kappa

    @cached_property
    def kappa_value_ops(self) -> tuple[Matrix, ...]:
        """Operator on V through which kappa(xi_a) acts on form values."""
        kappa = self._need_kappa()
        return tuple(self.tgt.operator(kappa.column(a), 0) for a in range(self.du))

    # -- Cartan calculus ------------------------------------------------------
    #
    # d, L_a and i_a (a a basis derivation) are compiled once per degree into
    # sparse maps on value arrays; L_xi and i_xi for general xi are linear
    # combinations of the basis maps.

    def _own(self, w: Form) -> None:
        if w.complex is not self:
            raise ValueError("form belongs to another complex")

    def _cached(self, key, build, *args) -> _SparseMap:
        if key not in self._maps:
            self._maps[key] = build(*args)
        return self._maps[key]

    def _slot(self, q: int, args: tuple[int, ...]) -> tuple[int, int]:
        """(sign, offset) of the stored value that ``w(*args)`` reads."""
        sign, st = _sort_sign(args)
        return (sign, self._offset(q, st)) if sign else (0, 0)

    def _d_map(self, q: int) -> _SparseMap:
        return self._cached(("d", q), self._build_d_map, q)

    def _build_d_map(self, q: int) -> _SparseMap:
        ops = self.kappa_value_ops
        br = self.src.bracket_table
        dv = self.dim_values
        scale = Fraction(1, q + 1)
        rows = []
        for t in self.tuples(q + 1):
            for k in range(dv):
                row: dict[int, Fraction] = {}
                for r in range(q + 1):
                    base = self._offset(q, t[:r] + t[r + 1:])
                    sign = -1 if r % 2 else 1
                    for l, c in enumerate(ops[t[r]].rows[k]):
                        if c:
                            row[base + l] = row.get(base + l, 0) + sign * c
                for r in range(q + 1):
                    for s in range(r + 1, q + 1):
                        rest = t[:r] + t[r + 1:s] + t[s + 1:]
                        sign = -1 if (r + s) % 2 else 1
                        for b, c in enumerate(br[t[r]][t[s]]):
                            if c:
                                sg, off = self._slot(q, (b,) + rest)
                                if sg:
                                    row[off + k] = row.get(off + k, 0) + sign * sg * c
                rows.append(row)
        return _SparseMap.build(rows, scale)

    def _lie_map(self, q: int, a: int) -> _SparseMap:
        return self._cached(("L", q, a), self._build_lie_map, q, a)

    def _build_lie_map(self, q: int, a: int) -> _SparseMap:
        K = self.kappa_value_ops[a]
        br = self.src.bracket_table[a]
        dv = self.dim_values
        rows = []
        for t in self.tuples(q):
            base = self._offset(q, t)
            for k in range(dv):
                row: dict[int, Fraction] = {}
                for l, c in enumerate(K.rows[k]):
                    if c:
                        row[base + l] = c
                for r in range(q):
                    for b, c in enumerate(br[t[r]]):
                        if c:
                            sg, off = self._slot(q, t[:r] + (b,) + t[r + 1:])
                            if sg:
                                row[off + k] = row.get(off + k, 0) - sg * c
                rows.append(row)
        return _SparseMap.build(rows)

    def _interior_map(self, q: int, a: int) -> _SparseMap:
        return self._cached(("i", q, a), self._build_interior_map, q, a)

    def _build_interior_map(self, q: int, a: int) -> _SparseMap:
        rows = []
        for t in self.tuples(q - 1):
            sg, off = self._slot(q, (a,) + t)
            for k in range(self.dim_values):
                rows.append({off + k: Fraction(q * sg)} if sg else {})
        return _SparseMap.build(rows)

    def _combine(self, xi: Sequence, build, q_out: int, values: Vector) -> Vector:
        out = [Fraction(0)] * self.ambient(q_out)
        for a, c in enumerate(vec(xi)):
            if c:
                for i, x in enumerate(build(a).apply(values)):
                    if x:
                        out[i] += c * x
        return tuple(out)

    def interior(self, xi: Sequence, w: Form) -> Form:
        self._own(w)
        q = w.degree
        if q <= 0 or self.ambient(q - 1) == 0:
            return self.zero(q - 1)
        return Form(self, q - 1, self._combine(xi, lambda a: self._interior_map(q, a), q - 1, w.values))

    def lie(self, xi: Sequence, w: Form) -> Form:
        self._own(w)
        q = w.degree
        if self.ambient(q) == 0:
            return self.zero(q)
        return Form(self, q, self._combine(xi, lambda a: self._lie_map(q, a), q, w.values))

    def d(self, w: Form) -> Form:
        self._own(w)
        q = w.degree
        if q < 0 or self.ambient(q + 1) == 0:
            return self.zero(q + 1)
        return Form(self, q + 1, self._d_map(q).apply(w.values))

    def curvature(self) -> dict[tuple[int, int], Vector]:
        """[kappa a, kappa b] - kappa [a, b] on basis pairs a < b, in D(V) coordinates."""
        kappa = self._need_kappa()
        cols = kappa.columns()
        out = {}
        for a, b in itertools.combinations(range(self.du), 2):
            lhs = self.tgt.bracket(cols[a], cols[b])
            rhs = kappa.apply(self.src.bracket_table[a][b])
            out[(a, b)] = tuple(x - y for x, y in zip(lhs, rhs))
        return out

    def is_flat(self) -> bool:
        return all(is_zero(v) for v in self.curvature().values())

    @cached_property
    def scalar_complex(self) -> DeRhamComplex:
        """Forms on D(U) with values in the base algebra, driven by the
        algebra component of kappa."""
        if isinstance(self.V, Algebra):
            return self
        kappa = None
        if self.kappa is not None:
            alg = derivation_space(self.algebra)
            cols = [alg.require_coordinates([self.tgt.algebra_part(c)]) for c in self.kappa.columns()]
            kappa = Matrix.from_columns(cols, alg.dim) if cols else Matrix.zeros(alg.dim, 0)
        return DeRhamComplex(self.U, self.algebra, kappa)

    # -- cohomology -----------------------------------------------------------

    def check_membership(self, w: Form) -> bool:
        ok = self.contains(w)
        if not ok:
            msg = f"degree-{w.degree} form is not A-multilinear"
            self.warnings.append(msg)
            log.warning(msg)
        return ok

    def d_matrix(self, q: int) -> Matrix:
        dst = self.space(q + 1)
        cols = []
        for w in self.basis_forms(q):
            img = self.d(w)
            c = dst.coordinates(img.values) if dst.ambient_dim else ()
            if c is None:
                raise ValueError(f"d of a degree-{q} basis form left the form space")
            cols.append(c)
        return Matrix.from_columns(cols, dst.dim) if cols else Matrix.zeros(dst.dim, 0)

    def cohomology(self, q_max: int) -> list[dict]:
        for pair, v in self.curvature().items():
            if not is_zero(v):
                raise NonzeroCurvature(pair)
        rows = []
        prev_rank = 0
        for q in range(q_max + 1):
            images = [self.d(w) for w in self.basis_forms(q)]
            for img in images:
                self.check_membership(img)
                if not self.d(img).is_zero():
                    raise AssertionError(f"d o d is nonzero in degree {q}")
            dim = self.space(q).dim if self.ambient(q) else 0
            rk = len(echelon_rows([img.values for img in images], self.ambient(q + 1))[0]) \
                if self.ambient(q + 1) else 0
            rows.append({"q": q, "dim": dim, "rank": rk, "H": dim - rk - prev_rank})
            prev_rank = rk
        return rows


def wedge(phi: Form, w: Form) -> Form:
    """Wedge of an algebra-valued form with a form over the same source."""
    cx = w.complex
    if phi.complex.src is not cx.src or not isinstance(phi.complex.V, Algebra):
        raise ValueError("wedge needs an algebra-valued form over the same source")
    p, q = phi.degree, w.degree
    if p < 0 or q < 0 or cx.ambient(p + q) == 0:
        return cx.zero(p + q)
    coef = Fraction(factorial(p) * factorial(q), factorial(p + q))
    acts = cx.value_actions
    dv = cx.dim_values
    out: list[Fraction] = []
    for t in cx.tuples(p + q):
        acc = [Fraction(0)] * dv
        for I in itertools.combinations(range(p + q), p):
            J = tuple(j for j in range(p + q) if j not in I)
            sign = -1 if (sum(I) - p * (p - 1) // 2) % 2 else 1
            fval = phi(*(t[i] for i in I))
            wval = w(*(t[j] for j in J))
            for i, c in enumerate(fval):
                if c:
                    for k, a in enumerate(acts[i].apply(wval)):
                        if a:
                            acc[k] += sign * c * a
        out.extend(coef * a for a in acc)
    return cx.form(p + q, out)


def interior_product(xi: Sequence, w: Form) -> Form:
    return w.complex.interior(xi, w)


def lie_derivative(xi: Sequence, w: Form) -> Form:
    return w.complex.lie(xi, w)


def cartan_d(w: Form) -> Form:
    return w.complex.d(w)


def form_space(U: Carrier, V: Carrier, q: int) -> Subspace:
    return DeRhamComplex(U, V).space(q)


def derham_cohomology(U: Carrier, V: Carrier, kappa: Matrix | None, q_max: int) -> list[dict]:
    return DeRhamComplex(U, V, kappa).cohomology(q_max)


def lift_kappa(mod: ModuleOverAlgebra) -> Matrix:
    """kappa(X) = (componentwise lift of X, X) for a free module."""
    from .derivation import connection_from_potential
    return connection_from_potential(mod).matrix


def euler_field(mod: ModuleOverAlgebra) -> Vector:
    """Coordinates of (id_M, 0) among the module derivations."""
    space = module_derivation_space(mod)
    n = mod.base.dim
    return space.require_coordinates([Matrix.identity(mod.dim), Matrix.zeros(n, n)])


@dataclass
class HomotopyReport:
    module: str
    q_max: int
    checked: dict[int, int]
    failures: list[tuple[int, int]]

    @property
    def ok(self) -> bool:
        return not self.failures


def homotopy_check(mod: ModuleOverAlgebra, q_max: int) -> HomotopyReport:
    """Verify w = i_E dw + d i_E w on every basis form of degree <= q_max."""
    cx = DeRhamComplex(mod, mod)
    E = euler_field(mod)
    checked = {}
    failures = []
    for q in range(q_max + 1):
        forms = cx.basis_forms(q) if cx.ambient(q) else []
        for k, w in enumerate(forms):
            lhs = cx.interior(E, cx.d(w)) + cx.d(cx.interior(E, w))
            if lhs != w:
                failures.append((q, k))
        checked[q] = len(forms)
    return HomotopyReport(mod.name, q_max, checked, failures)
