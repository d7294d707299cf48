"""A second, deliberately naive way to compute every dimension.

Nothing here goes through the joint linear systems, the operator spaces or
the complexes of the main code.  Constraints are written out entry by entry
from the structure tensors, graded maps are stored as full arrays over all
index tuples (alternation is imposed as constraints, not by storage), and
ranks and nullspaces come from sympy's sparse ``DomainMatrix`` over QQ.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from .algebra import Algebra
from .module import ModuleOverAlgebra

Carrier = Union[Algebra, ModuleOverAlgebra]

DEFAULT_CAP = 64
NAIVE_AMBIENT_CAP = 4000


class CapExceeded(ValueError):
    pass


class Mismatch(AssertionError):
    def __init__(self, statement: str, primary, oracle):
        super().__init__(f"{statement}: primary {primary}, oracle {oracle}")
        self.statement, self.primary, self.oracle = statement, primary, oracle


# -- sparse rational linear algebra via sympy --------------------------------


def _q(x) -> QQ:
    x = Fraction(x)
    return QQ(x.numerator, x.denominator)


def _matrix(rows: Sequence[dict[int, Fraction]], ncols: int) -> DomainMatrix:
    data = {}
    for i, r in enumerate(rows):
        clean = {j: _q(c) for j, c in r.items() if c}
        if clean:
            data[i] = clean
    return DomainMatrix(data, (max(len(rows), 1), ncols), QQ)


def rank_of(rows: Sequence[dict[int, Fraction]], ncols: int) -> int:
    if ncols == 0 or not rows:
        return 0
    return _matrix(rows, ncols).rank()


def null_basis(rows: Sequence[dict[int, Fraction]], ncols: int) -> list[list[Fraction]]:
    if ncols == 0:
        return []
    if not any(rows):
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    ns = _matrix(rows, ncols).nullspace()
    return [[Fraction(int(x.numerator), int(x.denominator)) for x in row]
            for row in ns.to_list()] if ns.shape[0] else []


def solve_in_span(basis: list[list[Fraction]], v: Sequence[Fraction]) -> list[Fraction]:
    """Coordinates of v in the span of ``basis`` (which must contain v)."""
    k, n = len(basis), len(v)
    if k == 0:
        if any(v):
            raise ValueError("vector outside an empty span")
        return []
    A = DomainMatrix([[_q(basis[j][i]) for j in range(k)] + [_q(v[i])] for i in range(n)], (n, k + 1), QQ)
    R, piv = A.rref()
    if k in piv:
        raise ValueError("vector outside the span")
    rows = R.to_list()
    out = [Fraction(0)] * k
    for r, p in enumerate(piv):
        x = rows[r][k]
        out[p] = Fraction(int(x.numerator), int(x.denominator))
    return out


# -- raw structure access ---------------------------------------------------


def _prod(a: Algebra, f: Sequence[Fraction], g: Sequence[Fraction]) -> list[Fraction]:
    n = a.dim
    out = [Fraction(0)] * n
    for i in range(n):
        if f[i]:
            for j in range(n):
                if g[j]:
                    for k in range(n):
                        c = a.products[i][j][k]
                        if c:
                            out[k] += f[i] * g[j] * c
    return out


def _act(mod: ModuleOverAlgebra, f: Sequence[Fraction], x: Sequence[Fraction]) -> list[Fraction]:
    m = mod.dim
    out = [Fraction(0)] * m
    for i in range(mod.base.dim):
        if f[i]:
            for j in range(m):
                if x[j]:
                    for k in range(m):
                        c = mod.action[i][j][k]
                        if c:
                            out[k] += f[i] * x[j] * c
    return out


def _e(n: int, i: int) -> list[Fraction]:
    return [Fraction(int(k == i)) for k in range(n)]


# Operators are n x n nested lists op[k][l] (column l = image of basis l).
# Unknown operators are "symbolic": apply() returns, per output coordinate, a
# dict {variable index: coefficient}.


def _sym_apply(offset: int, size: int, x: Sequence[Fraction]) -> list[dict[int, Fraction]]:
    return [{offset + k * size + l: x[l] for l in range(size) if x[l]} for k in range(size)]


def _sym_lin(coeffs: Sequence[tuple[Fraction, list[dict[int, Fraction]]]]) -> list[dict[int, Fraction]]:
    n = len(coeffs[0][1])
    out: list[dict[int, Fraction]] = [{} for _ in range(n)]
    for c, vecs in coeffs:
        for k, d in enumerate(vecs):
            for j, w in d.items():
                out[k][j] = out[k].get(j, 0) + c * w
    return out


def _sym_mult(mult, f: Sequence[Fraction], s: list[dict[int, Fraction]], size: int) -> list[dict[int, Fraction]]:
    """f times a symbolic element, through the numeric bilinear ``mult``."""
    out: list[dict[int, Fraction]] = [{} for _ in range(size)]
    for l in range(len(s)):
        img = mult(f, _e(len(s), l))
        for k, c in enumerate(img):
            if c:
                for j, w in s[l].items():
                    out[k][j] = out[k].get(j, 0) + c * w
    return out


# -- base solution spaces -----------------------------------------------------


def _rows_multiplier(a: Algebra, off: int) -> list[dict[int, Fraction]]:
    n, rows = a.dim, []
    for i in range(n):
        for j in range(n):
            # R(b_i b_j) - b_i R(b_j)
            lhs = _sym_apply(off, n, a.products[i][j])
            rhs = _sym_mult(lambda f, g: _prod(a, f, g), _e(n, i), _sym_apply(off, n, _e(n, j)), n)
            rows += _sym_lin([(1, lhs), (-1, rhs)])
    return rows


def _rows_derivation(a: Algebra, off: int) -> list[dict[int, Fraction]]:
    n, rows = a.dim, []
    mul = lambda f, g: _prod(a, f, g)  # noqa: E731
    for i in range(n):
        for j in range(n):
            lhs = _sym_apply(off, n, a.products[i][j])
            t1 = _sym_mult(mul, _e(n, j), _sym_apply(off, n, _e(n, i)), n)
            t2 = _sym_mult(mul, _e(n, i), _sym_apply(off, n, _e(n, j)), n)
            rows += _sym_lin([(1, lhs), (-1, t1), (-1, t2)])
    return rows


def _sym_act_of_alg(mod: ModuleOverAlgebra, off: int, i: int, x: Sequence[Fraction]) -> list[dict[int, Fraction]]:
    """(R b_i) . x with R symbolic at ``off``."""
    n, m = mod.base.dim, mod.dim
    Rb = _sym_apply(off, n, _e(n, i))
    out: list[dict[int, Fraction]] = [{} for _ in range(m)]
    for p in range(n):
        img = _act(mod, _e(n, p), x)
        for k, c in enumerate(img):
            if c:
                for j, w in Rb[p].items():
                    out[k][j] = out[k].get(j, 0) + c * w
    return out


def _rows_module_multiplier(mod: ModuleOverAlgebra) -> list[dict[int, Fraction]]:
    n, m = mod.base.dim, mod.dim
    off_alg = m * m
    rows = _rows_multiplier(mod.base, off_alg)
    act = lambda f, x: _act(mod, f, x)  # noqa: E731
    for i in range(n):
        for j in range(m):
            bm = mod.action[i][j]
            lhs = _sym_apply(0, m, bm)
            # Delta(b_i m_j) = (R b_i) m_j  and  Delta(b_i m_j) = b_i Delta(m_j)
            rows += _sym_lin([(1, lhs), (-1, _sym_act_of_alg(mod, off_alg, i, _e(m, j)))])
            rows += _sym_lin([(1, lhs), (-1, _sym_mult(act, _e(n, i), _sym_apply(0, m, _e(m, j)), m))])
    return rows


def _rows_module_derivation(mod: ModuleOverAlgebra) -> list[dict[int, Fraction]]:
    n, m = mod.base.dim, mod.dim
    off_alg = m * m
    rows = _rows_derivation(mod.base, off_alg)
    act = lambda f, x: _act(mod, f, x)  # noqa: E731
    for i in range(n):
        for j in range(m):
            lhs = _sym_apply(0, m, mod.action[i][j])
            t1 = _sym_act_of_alg(mod, off_alg, i, _e(m, j))
            t2 = _sym_mult(act, _e(n, i), _sym_apply(0, m, _e(m, j)), m)
            rows += _sym_lin([(1, lhs), (-1, t1), (-1, t2)])
    return rows


@dataclass
class OpBasis:
    """A basis of operator tuples, each component an s x s nested list."""

    sizes: tuple[int, ...]
    ops: list[tuple[list[list[Fraction]], ...]]
    flat: list[list[Fraction]]

    @property
    def dim(self) -> int:
        return len(self.ops)


def _unflatten(v: Sequence[Fraction], sizes: Sequence[int]) -> tuple[list[list[Fraction]], ...]:
    out, pos = [], 0
    for s in sizes:
        out.append([list(v[pos + k * s: pos + (k + 1) * s]) for k in range(s)])
        pos += s * s
    return tuple(out)


def _flatten(mats: Sequence[list[list[Fraction]]]) -> list[Fraction]:
    return [x for M in mats for row in M for x in row]


def _basis_from_rows(rows, sizes) -> OpBasis:
    n = sum(s * s for s in sizes)
    flat = null_basis(rows, n)
    return OpBasis(tuple(sizes), [_unflatten(v, sizes) for v in flat], flat)


def multiplier_basis(U: Carrier) -> OpBasis:
    if isinstance(U, Algebra):
        return _basis_from_rows(_rows_multiplier(U, 0), (U.dim,))
    return _basis_from_rows(_rows_module_multiplier(U), (U.dim, U.base.dim))


def derivation_basis(U: Carrier) -> OpBasis:
    if isinstance(U, Algebra):
        return _basis_from_rows(_rows_derivation(U, 0), (U.dim,))
    return _basis_from_rows(_rows_module_derivation(U), (U.dim, U.base.dim))


def endomorphism_dim(mod: ModuleOverAlgebra) -> int:
    m = mod.dim
    rows = []
    act = lambda f, x: _act(mod, f, x)  # noqa: E731
    for i in range(mod.base.dim):
        for j in range(m):
            lhs = _sym_apply(0, m, mod.action[i][j])
            rows += _sym_lin([(1, lhs), (-1, _sym_mult(act, _e(mod.base.dim, i), _sym_apply(0, m, _e(m, j)), m))])
    return m * m - rank_of(rows, m * m)


# -- operator arithmetic on bases ---------------------------------------------


def _matmul(A, B):
    n, k, m = len(A), len(B), len(B[0]) if B else 0
    return [[sum((A[i][p] * B[p][j] for p in range(k)), Fraction(0)) for j in range(m)] for i in range(n)]


def _sub(A, B):
    return [[x - y for x, y in zip(r, s)] for r, s in zip(A, B)]


def _mult_matrix(U: Carrier, i: int) -> list[list[Fraction]]:
    """Matrix of the action of algebra basis element i on U."""
    if isinstance(U, Algebra):
        cols = [_prod(U, _e(U.dim, i), _e(U.dim, j)) for j in range(U.dim)]
    else:
        cols = [_act(U, _e(U.base.dim, i), _e(U.dim, j)) for j in range(U.dim)]
    d = U.dim
    return [[cols[j][k] for j in range(d)] for k in range(d)]


def _alg(U: Carrier) -> Algebra:
    return U if isinstance(U, Algebra) else U.base


def _structure(U: Carrier, basis: OpBasis, op) -> list[list[list[Fraction]]]:
    """table[a][b] = coordinates of op(basis a, basis b), componentwise."""
    return [[solve_in_span(basis.flat, _flatten([op(x, y) for x, y in zip(A, B)])) for B in basis.ops]
            for A in basis.ops]


def _action_tables(U: Carrier, basis: OpBasis) -> list[list[list[Fraction]]]:
    """acts[i][a] = coordinates of b_i . (basis a)."""
    a = _alg(U)
    per_comp = [_mult_matrix(U, i) for i in range(a.dim)]
    alg_mats = [_mult_matrix(a, i) for i in range(a.dim)]
    out = []
    for i in range(a.dim):
        mats = (per_comp[i],) if isinstance(U, Algebra) else (per_comp[i], alg_mats[i])
        out.append([solve_in_span(basis.flat, _flatten([_matmul(L, X) for L, X in zip(mats, A)]))
                    for A in basis.ops])
    return out


# -- Hochschild ---------------------------------------------------------------


def hochschild_dims(U: Carrier, q_max: int, cap: int = NAIVE_AMBIENT_CAP) -> list[dict]:
    """dim C^q, rank delta^q and H^q with kappa = id, from full arrays."""
    B = multiplier_basis(U)
    d = B.dim
    comp = _structure(U, B, _matmul)
    acts = _action_tables(U, B)
    spaces = []
    for q in range(q_max + 1):
        N = d ** q * d
        if N > cap:
            spaces.append(None)
            continue
        rows = []
        tuples = list(itertools.product(range(d), repeat=q))
        index = {t: i * d for i, t in enumerate(tuples)}
        for i in range(len(acts)):
            for t in tuples:
                for s in range(q):
                    for k in range(d):
                        row: dict[int, Fraction] = {}
                        for b, c in enumerate(acts[i][t[s]]):
                            if c:
                                j = index[t[:s] + (b,) + t[s + 1:]] + k
                                row[j] = row.get(j, 0) + c
                        for l in range(d):
                            c = acts[i][l][k]
                            if c:
                                row[index[t] + l] = row.get(index[t] + l, 0) - c
                        rows.append(row)
        spaces.append((null_basis(rows, N), index))

    def compose(x, y):
        out = [Fraction(0)] * d
        for a, xa in enumerate(x):
            for b, yb in enumerate(y):
                if xa and yb:
                    for k, c in enumerate(comp[a][b]):
                        out[k] += xa * yb * c
        return out

    def delta(values, q, index_q):
        ev = lambda t: values[index_q[t]: index_q[t] + d]  # noqa: E731
        out = []
        for t in itertools.product(range(d), repeat=q + 1):
            acc = compose(_e(d, t[0]), ev(t[1:]))
            for r in range(1, q + 1):
                sign = -1 if r % 2 else 1
                for b, c in enumerate(comp[t[r - 1]][t[r]]):
                    if c:
                        v = ev(t[:r - 1] + (b,) + t[r + 1:])
                        acc = [x + sign * c * y for x, y in zip(acc, v)]
            tail = compose(ev(t[:q]), _e(d, t[q]))
            sign = -1 if (q + 1) % 2 else 1
            acc = [x + sign * y for x, y in zip(acc, tail)]
            out.append(acc)
        return [x for a in out for x in a]

    rows_out = []
    prev = 0
    for q in range(q_max + 1):
        if spaces[q] is None:
            rows_out.append({"q": q, "dim": None, "rank": None, "H": None})
            prev = None
            continue
        basis, index = spaces[q]
        images = [delta(v, q, index) for v in basis]
        rk = rank_of([{j: x for j, x in enumerate(img) if x} for img in images], d ** (q + 1) * d)
        H = None if prev is None else len(basis) - rk - prev
        rows_out.append({"q": q, "dim": len(basis), "rank": rk, "H": H})
        prev = rk
    return rows_out


# -- de Rham ------------------------------------------------------------------


def derham_dims(U: Carrier, q_max: int, cap: int = NAIVE_AMBIENT_CAP) -> list[dict]:
    """dim Omega^q, rank d^q and H^q with kappa = id, from full arrays."""
    D = derivation_basis(U)
    du = D.dim
    dv = U.dim
    br = _structure(U, D, lambda x, y: _sub(_matmul(x, y), _matmul(y, x)))
    acts = _action_tables(U, D)
    a = _alg(U)
    vacts = [_mult_matrix(U, i) for i in range(a.dim)]
    kops = [X[0] for X in D.ops]   # value action of kappa(xi) = xi for kappa = id

    def space(q):
        N = du ** q * dv
        if N > cap:
            return None
        tuples = list(itertools.product(range(du), repeat=q))
        index = {t: i * dv for i, t in enumerate(tuples)}
        rows = []
        for t in tuples:
            for p in range(q - 1):
                if t[p] <= t[p + 1]:
                    sw = t[:p] + (t[p + 1], t[p]) + t[p + 2:]
                    for k in range(dv):
                        row = {index[t] + k: Fraction(1)}
                        row[index[sw] + k] = row.get(index[sw] + k, 0) + 1
                        rows.append(row)
        if q >= 1:
            for i in range(a.dim):
                for t in tuples:
                    for k in range(dv):
                        row: dict[int, Fraction] = {}
                        for b, c in enumerate(acts[i][t[0]]):
                            if c:
                                j = index[(b,) + t[1:]] + k
                                row[j] = row.get(j, 0) + c
                        for l in range(dv):
                            c = vacts[i][k][l]
                            if c:
                                row[index[t] + l] = row.get(index[t] + l, 0) - c
                        rows.append(row)
        return null_basis(rows, N), index

    def d_image(values, q, index):
        ev = lambda t: values[index[t]: index[t] + dv]  # noqa: E731
        out = []
        for t in itertools.combinations(range(du), q + 1):
            acc = [Fraction(0)] * dv
            for r in range(q + 1):
                sign = -1 if r % 2 else 1
                w = ev(t[:r] + t[r + 1:])
                K = kops[t[r]]
                for k in range(dv):
                    acc[k] += sign * sum((K[k][l] * w[l] for l in range(dv)), Fraction(0))
            for r in range(q + 1):
                for s in range(r + 1, q + 1):
                    sign = -1 if (r + s) % 2 else 1
                    rest = t[:r] + t[r + 1:s] + t[s + 1:]
                    for b, c in enumerate(br[t[r]][t[s]]):
                        if c:
                            w = ev((b,) + rest)
                            for k in range(dv):
                                acc[k] += sign * c * w[k]
            out.extend(x / (q + 1) for x in acc)
        return out

    rows_out = []
    prev = 0
    for q in range(q_max + 1):
        sp = space(q)
        if sp is None:
            rows_out.append({"q": q, "dim": None, "rank": None, "H": None})
            prev = None
            continue
        basis, index = sp
        n_out = len(list(itertools.combinations(range(du), q + 1))) * dv
        images = [d_image(v, q, index) for v in basis]
        rk = rank_of([{j: x for j, x in enumerate(img) if x} for img in images], n_out) if n_out else 0
        H = None if prev is None else len(basis) - rk - prev
        rows_out.append({"q": q, "dim": len(basis), "rank": rk, "H": H})
        prev = rk
    return rows_out


# -- comparison with the main code path ---------------------------------------


def base_dims(alg: Algebra, mod: ModuleOverAlgebra | None) -> dict[str, int]:
    out = {
        f"dim M({alg.name})": multiplier_basis(alg).dim,
        f"dim D({alg.name})": derivation_basis(alg).dim,
    }
    if mod is not None:
        out[f"dim M({mod.name})"] = multiplier_basis(mod).dim
        out[f"dim D({mod.name})"] = derivation_basis(mod).dim
        out[f"dim End({mod.name})"] = endomorphism_dim(mod)
    return out


def _primary_base(alg: Algebra, mod: ModuleOverAlgebra | None) -> dict[str, int]:
    from .derivation import derivation_space, module_derivation_space
    from .module import endomorphisms
    from .multiplier import module_multiplier_space, multiplier_space
    out = {
        f"dim M({alg.name})": multiplier_space(alg).dim,
        f"dim D({alg.name})": derivation_space(alg).dim,
    }
    if mod is not None:
        out[f"dim M({mod.name})"] = module_multiplier_space(mod).dim
        out[f"dim D({mod.name})"] = module_derivation_space(mod).dim
        out[f"dim End({mod.name})"] = endomorphisms(mod).dim
    return out


def _graded_rows(prefix: str, name: str, rows: list[dict]) -> dict[str, int | None]:
    out = {}
    for r in rows:
        q = r["q"]
        out[f"{prefix} dim^{q}({name})"] = r["dim"]
        out[f"{prefix} rank^{q}({name})"] = r["rank"]
        out[f"{prefix} H^{q}({name})"] = r["H"]
    return out


def compare(alg: Algebra, mod: ModuleOverAlgebra | None, q_max: int = 3,
            cap: int = DEFAULT_CAP, ambient_cap: int = NAIVE_AMBIENT_CAP) -> list[dict]:
    """Rows ``{statement, primary, oracle, status}``; raises nothing on mismatch."""
    from .derham import DeRhamComplex
    from .hochschild import HochschildComplex

    oracle = base_dims(alg, mod)
    total = sum(v for k, v in oracle.items() if not k.startswith("dim End"))
    if total > cap:
        raise CapExceeded(f"total solution-space dimension {total} exceeds the cap {cap}")
    primary = _primary_base(alg, mod)
    carriers = [alg] + ([mod] if mod is not None else [])
    for U in carriers:
        oracle.update(_graded_rows("hochschild", U.name, hochschild_dims(U, q_max, ambient_cap)))
        primary.update(_graded_rows("hochschild", U.name, HochschildComplex(U, U).cohomology(q_max)))
        oracle.update(_graded_rows("derham", U.name, derham_dims(U, q_max, ambient_cap)))
        primary.update(_graded_rows("derham", U.name, DeRhamComplex(U, U).cohomology(q_max)))
    rows = []
    for key in oracle:
        p, o = primary.get(key), oracle[key]
        status = "skip" if o is None else ("agree" if p == o else "mismatch")
        rows.append({"statement": key, "primary": p, "oracle": o, "status": status})
    return rows


def check_agreement(rows: list[dict]) -> None:
    for r in rows:
        if r["status"] == "mismatch":
            raise Mismatch(r["statement"], r["primary"], r["oracle"])
