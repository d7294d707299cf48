"""The invariant suite behind ``modan check``.

Each check is a function of a :class:`CheckContext` that returns a list of
failure messages (empty when everything held) or raises :class:`Skip`.
Randomness is drawn from a generator seeded by ``(seed, tag)`` so a report
does not depend on which checks ran before.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import identities as ident
from .algebra import Algebra, annihilator, find_unit
from .derham import DeRhamComplex, NonzeroCurvature, euler_field
from .derivation import (connection_from_potential, derivation_space, module_derivation_space,
                         split_adjoint_derivation)
from .exactlin import Matrix, Subspace, image_basis, kernel_basis, unit_vector
from .gauge import make_automorphism, random_automorphism
from .hochschild import HochschildComplex, NonzeroResidual
from .module import (ModuleOverAlgebra, ann_of_algebra_in_module, ann_of_module_in_algebra,
                     endomorphisms, hom_into_annihilator)
from .multiplier import (adjoint_embedding, componentwise_section, composition_residual,
                         fiber_of, module_multiplier_space, multiplier_fiber, multiplier_space,
                         projection_image, projection_kernel, section_from_operators,
                         split_adjoint_multiplier, unit_isomorphism)
from .operators import PairOperator


class Skip(Exception):
    pass


@dataclass
class CheckContext:
    algebra: Algebra
    module: ModuleOverAlgebra | None
    q_max: int
    seed: int

    def rng(self, tag: str) -> random.Random:
        return random.Random(f"{self.seed}:{tag}")

    def need_module(self) -> ModuleOverAlgebra:
        if self.module is None:
            raise Skip("no module in the workspace")
        return self.module

    def need_degree(self) -> None:
        if self.q_max < 1:
            raise Skip("needs q_max >= 1")

    def need_unit(self) -> tuple:
        e = find_unit(self.algebra)
        if e is None:
            raise Skip("base algebra has no unit")
        return e


@dataclass
class CheckResult:
    tag: str
    status: str
    detail: list[str] = field(default_factory=list)

    def as_json(self) -> dict:
        return {"tag": self.tag, "status": self.status, "detail": self.detail}


CHECKS: dict[str, Callable[[CheckContext], list[str]]] = {}


def check(tag: str):
    def register(fn):
        CHECKS[tag] = fn
        return fn
    return register


def _closed(sub: Subspace, ops) -> bool:
    return all(sub.contains(op.apply(b)) for op in ops for b in sub.basis)


def _rand(rng: random.Random, n: int) -> tuple[Fraction, ...]:
    return ident.random_coords(rng, n)


# -- algebra --------------------------------------------------------------------


@check("algebra.ad_morphism")
def _ad_morphism(ctx: CheckContext) -> list[str]:
    a = ctx.algebra
    out = []
    for i in range(a.dim):
        for j in range(a.dim):
            if a.ad(a.products[i][j]) != a.mult_matrices[i] @ a.mult_matrices[j]:
                out.append(f"ad(b{i} b{j}) != ad(b{i}) ad(b{j})")
    return out


@check("algebra.ad_kernel_is_annihilator")
def _ad_kernel(ctx: CheckContext) -> list[str]:
    a = ctx.algebra
    ker = kernel_basis(a.ad_stack()) if a.dim else Subspace.zero(0)
    return [] if ker == annihilator(a) else ["kernel of ad differs from the annihilator"]


@check("algebra.unit")
def _unit(ctx: CheckContext) -> list[str]:
    a = ctx.algebra
    e = find_unit(a)
    if e is None:
        return []
    out = []
    if a.ad(e) != Matrix.identity(a.dim):
        out.append("ad of the unit is not the identity")
    if annihilator(a).dim:
        out.append("unital algebra with nonzero annihilator")
    return out


@check("algebra.random_products")
def _random_products(ctx: CheckContext) -> list[str]:
    a, rng = ctx.algebra, ctx.rng("algebra.random_products")
    out = []
    for _ in range(5):
        f, g, h = _rand(rng, a.dim), _rand(rng, a.dim), _rand(rng, a.dim)
        if a.mul(f, g) != a.ad(f).apply(g):
            out.append("tensor product disagrees with ad")
        if a.mul(a.mul(f, g), h) != a.mul(f, a.mul(g, h)) or a.mul(f, g) != a.mul(g, f):
            out.append("random elements break the axioms")
    return out


# -- multipliers ----------------------------------------------------------------


@check("multiplier.closure")
def _mult_closure(ctx: CheckContext) -> list[str]:
    sp = multiplier_space(ctx.algebra)
    ops = [b[0] for b in sp.basis_ops]
    return [f"R{i} R{j} is not a multiplier" for i, x in enumerate(ops) for j, y in enumerate(ops)
            if not sp.contains([x @ y])]


@check("multiplier.kernel_image_ideals")
def _mult_ideals(ctx: CheckContext) -> list[str]:
    a = ctx.algebra
    out = []
    for k, (R,) in enumerate(multiplier_space(a).basis_ops):
        if not _closed(kernel_basis(R), a.mult_matrices):
            out.append(f"kernel of R{k} is not an ideal")
        if not _closed(image_basis(R), a.mult_matrices):
            out.append(f"image of R{k} is not an ideal")
    return out


@check("multiplier.annihilator_stable")
def _mult_ann(ctx: CheckContext) -> list[str]:
    ann = annihilator(ctx.algebra)
    return [f"R{k} moves the annihilator" for k, (R,) in enumerate(multiplier_space(ctx.algebra).basis_ops)
            if not _closed(ann, [R])]


@check("multiplier.commutator_range")
def _mult_commutator(ctx: CheckContext) -> list[str]:
    a = ctx.algebra
    ann = annihilator(a)
    ops = [b[0] for b in multiplier_space(a).basis_ops]
    out = []
    for i, x in enumerate(ops):
        for j, y in enumerate(ops):
            c = x.commutator(y)
            if not all(ann.contains(col) for col in c.columns()):
                out.append(f"[R{i}, R{j}] leaves the annihilator")
    return out


@check("multiplier.unit_isomorphism")
def _unit_iso(ctx: CheckContext) -> list[str]:
    ctx.need_unit()
    a = ctx.algebra
    iso = unit_isomorphism(a)
    sp = multiplier_space(a)
    out = []
    if sp.dim != a.dim:
        out.append(f"dim M(A) = {sp.dim} but dim A = {a.dim}")
    ops = [b[0] for b in sp.basis_ops]
    images = [iso(R) for R in ops]
    if Subspace.span(images, a.dim).dim != len(ops):
        out.append("evaluation at the unit is not injective")
    for R in ops:
        if iso.inverse(iso(R)) != R:
            out.append("ad does not invert evaluation at the unit")
    for R1 in ops:
        for R2 in ops:
            if iso(R1 @ R2) != a.mul(iso(R1), iso(R2)):
                out.append("evaluation at the unit is not multiplicative")
    for i in range(a.dim):
        if iso(a.mult_matrices[i]) != a.basis_element(i):
            out.append(f"e*(ad b{i}) != b{i}")
    return out


# -- derivations ----------------------------------------------------------------


@check("derivation.bracket_closure")
def _der_closure(ctx: CheckContext) -> list[str]:
    sp = derivation_space(ctx.algebra)
    ops = [b[0] for b in sp.basis_ops]
    return [f"[X{i}, X{j}] is not a derivation" for i, x in enumerate(ops) for j, y in enumerate(ops)
            if not sp.contains([x.commutator(y)])]


@check("derivation.jacobi")
def _jacobi(ctx: CheckContext) -> list[str]:
    sp = derivation_space(ctx.algebra)
    rng = ctx.rng("derivation.jacobi")
    out = []
    for _ in range(3):
        x, y, z = (sp.element(_rand(rng, sp.dim))[0] for _ in range(3))
        j = (x.commutator(y.commutator(z)) + y.commutator(z.commutator(x))
             + z.commutator(x.commutator(y)))
        if not j.is_zero():
            out.append("Jacobi identity fails")
    return out


@check("derivation.kernel_subalgebra")
def _der_kernel(ctx: CheckContext) -> list[str]:
    a = ctx.algebra
    out = []
    for k, (X,) in enumerate(derivation_space(a).basis_ops):
        ker, im = kernel_basis(X), image_basis(X)
        if any(not ker.contains(a.mul(f, g)) for f in ker.basis for g in ker.basis):
            out.append(f"kernel of X{k} is not a subalgebra")
        if not _closed(im, [a.ad(f) for f in ker.basis]):
            out.append(f"image of X{k} is not a module over its kernel")
        if not _closed(annihilator(a), [X]):
            out.append(f"X{k} moves the annihilator")
    return out


@check("derivation.multiplier_action")
def _der_matching(ctx: CheckContext) -> list[str]:
    a = ctx.algebra
    ms, ds = multiplier_space(a), derivation_space(a)
    Rs = [b[0] for b in ms.basis_ops]
    Xs = [b[0] for b in ds.basis_ops]
    out = []
    for i, R in enumerate(Rs):
        for j, X in enumerate(Xs):
            if not ds.contains([R @ X]):
                out.append(f"R{i} X{j} is not a derivation")
            if not ms.contains([X.commutator(R)]):
                out.append(f"[X{j}, R{i}] is not a multiplier")
            for k, Y in enumerate(Xs):
                if X.commutator(R @ Y) != X.commutator(R) @ Y + R @ X.commutator(Y):
                    out.append(f"matching condition fails for (X{j}, R{i}, X{k})")
    return out


# -- modules --------------------------------------------------------------------


@check("module.random_compatibility")
def _mod_compat(ctx: CheckContext) -> list[str]:
    mod = ctx.need_module()
    a, rng = mod.base, ctx.rng("module.random_compatibility")
    out = []
    for _ in range(5):
        f, g, x = _rand(rng, a.dim), _rand(rng, a.dim), _rand(rng, mod.dim)
        if mod.act(f, mod.act(g, x)) != mod.act(a.mul(f, g), x):
            out.append("f(gM) != (fg)M")
    return out


@check("module.annihilators")
def _mod_ann(ctx: CheckContext) -> list[str]:
    mod = ctx.need_module()
    e = ctx.need_unit()
    if mod.act_matrix(e) != Matrix.identity(mod.dim):
        raise Skip("the unit does not act as the identity")
    out = []
    if ann_of_algebra_in_module(mod).dim:
        out.append("unital action with nonzero ann_M(A)")
    if not ann_of_module_in_algebra(mod).is_subspace_of(annihilator(mod.base)):
        out.append("ann_A(M) is not inside ann A")
    return out


def _pair_in(space, p: PairOperator) -> bool:
    return space.contains(p.as_tuple())


@check("module_multiplier.bundle")
def _mm_bundle(ctx: CheckContext) -> list[str]:
    mod = ctx.need_module()
    sp = module_multiplier_space(mod)
    hom = hom_into_annihilator(mod)
    out = []
    if projection_kernel(sp) != hom:
        out.append("kernel of the projection differs from Hom_A(M; ann_M A)")
    n = mod.base.dim
    for k, flat in enumerate(projection_image(sp).basis):
        R = Matrix.from_flat(flat, n, n)
        fib = multiplier_fiber(mod, R)
        if fib is None:
            out.append(f"image basis element {k} has an empty fiber")
            continue
        if fib.directions != hom:
            out.append(f"fiber directions over image element {k} differ from Hom_A(M; ann_M A)")
        for d in fib.direction_ops():
            moved = PairOperator(fib.base_point.module_op + d, R)
            if not _pair_in(sp, moved):
                out.append(f"base point plus a direction leaves the fiber over {k}")
            if not hom.contains((moved.module_op - fib.base_point.module_op).flatten()):
                out.append(f"difference of fiber points over {k} is not a direction")
    return out


@check("module_multiplier.submodules")
def _mm_submodules(ctx: CheckContext) -> list[str]:
    mod = ctx.need_module()
    acts = mod.action_matrices
    ann = ann_of_algebra_in_module(mod)
    ops = [b[0] for b in module_multiplier_space(mod).basis_ops]
    out = []
    for k, D in enumerate(ops):
        if not _closed(kernel_basis(D), acts) or not _closed(image_basis(D), acts):
            out.append(f"kernel or image of Delta{k} is not a submodule")
        if not _closed(ann, [D]):
            out.append(f"Delta{k} moves ann_M(A)")
    for i, D1 in enumerate(ops):
        for j, D2 in enumerate(ops):
            c = D1.commutator(D2)
            if any(not (c @ A).is_zero() for A in acts):
                out.append(f"[Delta{i}, Delta{j}] does not kill A.M")
    return out


@check("module_multiplier.adjoint_kernel")
def _mm_adjoint(ctx: CheckContext) -> list[str]:
    mod = ctx.need_module()
    emb = adjoint_embedding(mod)
    sp = module_multiplier_space(mod)
    out = []
    if emb.kernel != ann_of_module_in_algebra(mod):
        out.append("kernel of the adjoint embedding differs from ann_A(M)")
    for i in range(mod.base.dim):
        if not _pair_in(sp, emb(unit_vector(mod.base.dim, i))):
            out.append(f"adjoint pair of b{i} is not a module multiplier")
    return out


def _need_free_unital(ctx: CheckContext) -> ModuleOverAlgebra:
    mod = ctx.need_module()
    if mod.free_rank is None:
        raise Skip("module is not free")
    ctx.need_unit()
    return mod


@check("module_multiplier.free_lift")
def _mm_free(ctx: CheckContext) -> list[str]:
    mod = _need_free_unital(ctx)
    sec = componentwise_section(mod)
    ms = multiplier_space(mod.base)
    Rs = [b[0] for b in ms.basis_ops]
    out = []
    if not sec.is_algebra_linear:
        out.append("componentwise section is not A-linear")
    for i, R1 in enumerate(Rs):
        for j, R2 in enumerate(Rs):
            if not composition_residual(sec, R1, R2).is_zero():
                out.append(f"componentwise lift does not preserve R{i} R{j}")
    return out


@check("module_multiplier.section_residual")
def _mm_residual(ctx: CheckContext) -> list[str]:
    mod = ctx.need_module()
    ms = multiplier_space(mod.base)
    sp = module_multiplier_space(mod)
    deltas = []
    for (R,) in ms.basis_ops:
        fib = multiplier_fiber(mod, R)
        if fib is None:
            raise Skip("projection is not surjective")
        deltas.append(fib.base_point.module_op)
    sec = section_from_operators(mod, deltas)
    n = mod.base.dim
    out = []
    for i, (R1,) in enumerate(ms.basis_ops):
        for j, (R2,) in enumerate(ms.basis_ops):
            G = composition_residual(sec, R1, R2)
            if not sp.contains([G, Matrix.zeros(n, n)]):
                out.append(f"residual on (R{i}, R{j}) is not a vertical multiplier")
            if not endomorphisms(mod).contains(G.flatten()):
                out.append(f"residual on (R{i}, R{j}) is not A-linear")
    return out


@check("module_multiplier.adjoint_split")
def _mm_split(ctx: CheckContext) -> list[str]:
    mod = ctx.need_module()
    if not mod.is_adjoint:
        raise Skip("module is not the adjoint module")
    sp = module_multiplier_space(mod)
    hom = hom_into_annihilator(mod)
    out = []
    for k in range(sp.dim):
        p = sp.pair(unit_vector(sp.dim, k))
        iota, rest = split_adjoint_multiplier(mod, p)
        if iota + rest != p or not hom.contains(rest.module_op.flatten()):
            out.append(f"splitting fails on basis pair {k}")
    image = Subspace.span([sp.require_coordinates([R, R]) for (R,) in multiplier_space(mod.base).basis_ops],
                          sp.dim)
    if image.dim + hom.dim != sp.dim:
        out.append(f"dimension {sp.dim} != {image.dim} + {hom.dim}")
    return out


@check("module_derivation.bundle")
def _md_bundle(ctx: CheckContext) -> list[str]:
    mod = ctx.need_module()
    sp = module_derivation_space(mod)
    ends = endomorphisms(mod)
    out = []
    if projection_kernel(sp) != ends:
        out.append("kernel of the projection differs from End_A(M)")
    m, n = mod.dim, mod.base.dim
    for k, b in enumerate(ends.basis):
        if not sp.contains([Matrix.from_flat(b, m, m), Matrix.zeros(n, n)]):
            out.append(f"(rho{k}, 0) is not a module derivation")
    for k, flat in enumerate(projection_image(sp).basis):
        X = Matrix.from_flat(flat, n, n)
        fib = fiber_of(sp, X)
        if fib is None:
            out.append(f"image basis element {k} has an empty fiber")
            continue
        for d in fib.direction_ops():
            moved = PairOperator(fib.base_point.module_op + d, X)
            if not _pair_in(sp, moved):
                out.append(f"base point plus an endomorphism leaves the fiber over {k}")
            if not ends.contains((moved.module_op - fib.base_point.module_op).flatten()):
                out.append(f"difference of fiber points over {k} is not A-linear")
    return out


@check("module_derivation.structure")
def _md_structure(ctx: CheckContext) -> list[str]:
    mod = ctx.need_module()
    ds, ms = module_derivation_space(mod), module_multiplier_space(mod)
    Xs = [ds.pair(unit_vector(ds.dim, k)) for k in range(ds.dim)]
    Rs = [ms.pair(unit_vector(ms.dim, k)) for k in range(ms.dim)]
    out = []
    for i, R in enumerate(Rs):
        for j, X in enumerate(Xs):
            if not _pair_in(ds, R @ X):
                out.append(f"R{i} X{j} is not a module derivation")
            if not _pair_in(ms, X.bracket(R)):
                out.append(f"[X{j}, R{i}] is not a module multiplier")
            for k, Y in enumerate(Xs):
                if X.bracket(R @ Y) != X.bracket(R) @ Y + R @ X.bracket(Y):
                    out.append(f"matching condition fails for (X{j}, R{i}, X{k})")
    for i, X in enumerate(Xs):
        for j, Y in enumerate(Xs):
            if not _pair_in(ds, X.bracket(Y)):
                out.append(f"[X{i}, X{j}] is not a module derivation")
    return out


@check("module_derivation.kernel_stability")
def _md_kernels(ctx: CheckContext) -> list[str]:
    mod = ctx.need_module()
    ds = module_derivation_space(mod)
    annM = ann_of_algebra_in_module(mod)
    annA = ann_of_module_in_algebra(mod)
    out = []
    for k in range(ds.dim):
        p = ds.pair(unit_vector(ds.dim, k))
        N, X = p.module_op, p.algebra_op
        acts = [mod.act_matrix(f) for f in kernel_basis(X).basis]
        if not _closed(kernel_basis(N), acts) or not _closed(image_basis(N), acts):
            out.append(f"kernel or image of nabla{k} is not stable under Ker X")
        if not _closed(annM, [N]):
            out.append(f"nabla{k} moves ann_M(A)")
        if not _closed(annA, [X]):
            out.append(f"X{k} moves ann_A(M)")
    return out


@check("module_derivation.endomorphism_ideal")
def _md_ideal(ctx: CheckContext) -> list[str]:
    mod = ctx.need_module()
    ds = module_derivation_space(mod)
    m, n = mod.dim, mod.base.dim
    zero = Matrix.zeros(n, n)
    rhos = [PairOperator(Matrix.from_flat(b, m, m), zero) for b in endomorphisms(mod).basis]
    out = []
    for k in range(ds.dim):
        X = ds.pair(unit_vector(ds.dim, k))
        for j, rho in enumerate(rhos):
            b = X.bracket(rho)
            if not b.algebra_op.is_zero() or not endomorphisms(mod).contains(b.module_op.flatten()):
                out.append(f"[X{k}, rho{j}] leaves the endomorphism ideal")
    return out


@check("module_derivation.free_lift")
def _md_free(ctx: CheckContext) -> list[str]:
    mod = _need_free_unital(ctx)
    sec = connection_from_potential(mod)
    out = []
    if not sec.is_algebra_linear:
        out.append("componentwise connection is not A-linear")
    if not sec.is_lie:
        out.append("componentwise connection does not preserve brackets")
    return out


@check("module_derivation.adjoint_split")
def _md_split(ctx: CheckContext) -> list[str]:
    mod = ctx.need_module()
    if not mod.is_adjoint:
        raise Skip("module is not the adjoint module")
    ds = module_derivation_space(mod)
    ends = endomorphisms(mod)
    out = []
    for k in range(ds.dim):
        p = ds.pair(unit_vector(ds.dim, k))
        iota, rest = split_adjoint_derivation(mod, p)
        if iota + rest != p or not ends.contains(rest.module_op.flatten()):
            out.append(f"splitting fails on basis pair {k}")
    if derivation_space(mod.base).dim + ends.dim != ds.dim:
        out.append("dimension does not split as D(A) + End_A(A)")
    return out


# -- gauge ----------------------------------------------------------------------


def _gauge_setup(ctx: CheckContext, tag: str):
    mod = ctx.need_module()
    rng = ctx.rng(tag)
    G = random_automorphism(mod, rng)
    H = random_automorphism(mod, rng)
    ms, ds = module_multiplier_space(mod), module_derivation_space(mod)

    def rand_pair(space):
        return space.pair(_rand(rng, space.dim))
    return mod, rng, G, H, ms, ds, rand_pair


def _ad(G, p: PairOperator) -> PairOperator:
    return PairOperator(G.conjugate(p.module_op), p.algebra_op)


@check("gauge.preserves_spaces")
def _gauge_spaces(ctx: CheckContext) -> list[str]:
    mod, rng, G, _, ms, ds, rand_pair = _gauge_setup(ctx, "gauge.preserves_spaces")
    out = []
    hom, ends = hom_into_annihilator(mod), endomorphisms(mod)
    for _ in range(3):
        R, X = rand_pair(ms), rand_pair(ds)
        gR, gX = _ad(G, R), _ad(G, X)
        if not _pair_in(ms, gR) or gR.algebra_op != R.algebra_op:
            out.append("gauge transform of a multiplier pair left its fiber")
        if not _pair_in(ds, gX) or gX.algebra_op != X.algebra_op:
            out.append("gauge transform of a derivation pair left its fiber")
        if not hom.contains((gR.module_op - R.module_op).flatten()):
            out.append("multiplier gauge difference is not in Hom_A(M; ann_M A)")
        if not ends.contains((gX.module_op - X.module_op).flatten()):
            out.append("derivation gauge difference is not in End_A(M)")
    return out


@check("gauge.homomorphism")
def _gauge_hom(ctx: CheckContext) -> list[str]:
    mod, rng, G, _, ms, ds, rand_pair = _gauge_setup(ctx, "gauge.homomorphism")
    out = []
    for _ in range(3):
        R1, R2 = rand_pair(ms), rand_pair(ms)
        if _ad(G, R1 @ R2) != _ad(G, R1) @ _ad(G, R2):
            out.append("gauge transform does not respect composition")
        X1, X2 = rand_pair(ds), rand_pair(ds)
        if _ad(G, X1.bracket(X2)) != _ad(G, X1).bracket(_ad(G, X2)):
            out.append("gauge transform does not respect brackets")
    return out


@check("gauge.algebra_linear")
def _gauge_linear(ctx: CheckContext) -> list[str]:
    mod, rng, G, _, ms, ds, rand_pair = _gauge_setup(ctx, "gauge.algebra_linear")
    a = mod.base
    out = []
    for _ in range(3):
        f = _rand(rng, a.dim)
        scale = PairOperator(mod.act_matrix(f), a.ad(f))
        for name, space in (("multiplier", ms), ("derivation", ds)):
            p = rand_pair(space)
            if _ad(G, scale @ p) != scale @ _ad(G, p):
                out.append(f"gauge transform is not A-linear on {name} pairs")
    return out


@check("gauge.mixed")
def _gauge_mixed(ctx: CheckContext) -> list[str]:
    mod, rng, G, _, ms, ds, rand_pair = _gauge_setup(ctx, "gauge.mixed")
    out = []
    for _ in range(3):
        R, X = rand_pair(ms), rand_pair(ds)
        if _ad(G, R @ X) != _ad(G, R) @ _ad(G, X):
            out.append("gauge transform does not respect R o X")
        if _ad(G, X.bracket(R)) != _ad(G, X).bracket(_ad(G, R)):
            out.append("gauge transform does not respect [X, R]")
    return out


@check("gauge.group_action")
def _gauge_group(ctx: CheckContext) -> list[str]:
    mod, rng, G, H, ms, ds, rand_pair = _gauge_setup(ctx, "gauge.group_action")
    out = []
    for space in (ms, ds):
        p = rand_pair(space)
        if _ad(G @ H, p) != _ad(G, _ad(H, p)):
            out.append("ad_(GH) != ad_G ad_H")
        if _ad(G.inverse(), _ad(G, p)) != p:
            out.append("ad_(G^-1) does not invert ad_G")
    ident = make_automorphism(mod, Matrix.identity(mod.dim))
    p = rand_pair(ds)
    if _ad(ident, p) != p:
        out.append("identity gauge moved a pair")
    return out


# -- Hochschild -----------------------------------------------------------------


def _carriers(ctx: CheckContext):
    yield ctx.algebra
    if ctx.module is not None:
        yield ctx.module


@check("hochschild.delta_squared")
def _hh_dd(ctx: CheckContext) -> list[str]:
    ctx.need_degree()
    out = []
    for U in _carriers(ctx):
        out += [f"{U.name}: {m}" for m in ident.hochschild_delta_squared(HochschildComplex(U, U), ctx.q_max)]
    return out


@check("hochschild.graded_leibniz")
def _hh_leibniz(ctx: CheckContext) -> list[str]:
    ctx.need_degree()
    rng = ctx.rng("hochschild.graded_leibniz")
    out = []
    for U in _carriers(ctx):
        hc = HochschildComplex(U, U)
        out += [f"{U.name}: {m}" for m in ident.hochschild_leibniz(hc, rng, ctx.q_max)]
    return out


@check("hochschild.cohomology")
def _hh_cohomology(ctx: CheckContext) -> list[str]:
    ctx.need_degree()
    out = []
    for U in _carriers(ctx):
        hc = HochschildComplex(U, U)
        try:
            hc.cohomology(ctx.q_max)
        except NonzeroResidual as exc:
            out.append(f"{U.name}: {exc}")
        out += [f"{U.name}: {w}" for w in hc.warnings]
    return out


@check("hochschild.basis_invariance")
def _hh_perm(ctx: CheckContext) -> list[str]:
    ctx.need_degree()
    a = ctx.algebra
    perm = list(reversed(range(a.dim)))
    b = permute_algebra(a, perm)
    h1 = [r["H"] for r in HochschildComplex(a, a).cohomology(ctx.q_max)]
    h2 = [r["H"] for r in HochschildComplex(b, b).cohomology(ctx.q_max)]
    return [] if h1 == h2 else [f"cohomology changed under a basis permutation: {h1} vs {h2}"]


def permute_algebra(a: Algebra, perm: list[int]) -> Algebra:
    """Same algebra with basis reordered: new basis i is old basis perm[i]."""
    prods = [[[a.products[perm[i]][perm[j]][perm[k]] for k in range(a.dim)]
              for j in range(a.dim)] for i in range(a.dim)]
    return Algebra(f"{a.name}'", [a.basis[p] for p in perm], prods)


# -- de Rham --------------------------------------------------------------------


def _derham_complexes(ctx: CheckContext):
    for U in _carriers(ctx):
        yield U, DeRhamComplex(U, U)


def _derham_check(tag: str, fn, needs_rng: bool = True):
    @check(tag)
    def run(ctx: CheckContext) -> list[str]:
        ctx.need_degree()
        rng = ctx.rng(tag)
        out = []
        for U, cx in _derham_complexes(ctx):
            res = fn(cx, ctx.q_max, rng) if needs_rng else fn(cx, ctx.q_max)
            out += [f"{U.name}: {m}" for m in res]
        return out
    return run


_derham_check("derham.d_squared", ident.derham_d_squared, needs_rng=False)
_derham_check("derham.membership", ident.derham_membership)
_derham_check("derham.cartan_magic", ident.cartan_magic, needs_rng=False)
_derham_check("derham.lie_commutes_with_d", ident.lie_commutes_with_d, needs_rng=False)
_derham_check("derham.interior_anticommute", ident.interior_anticommute)
_derham_check("derham.interior_antiderivation", ident.interior_antiderivation)
_derham_check("derham.lie_derivation_law", ident.lie_derivation_law)
_derham_check("derham.d_leibniz", ident.d_leibniz)
_derham_check("derham.lie_bracket_law", ident.lie_bracket_law)
_derham_check("derham.lie_interior_law", ident.lie_interior_law)
_derham_check("derham.wedge_laws", ident.wedge_laws)


@check("derham.cohomology")
def _dr_cohomology(ctx: CheckContext) -> list[str]:
    ctx.need_degree()
    out = []
    for U, cx in _derham_complexes(ctx):
        try:
            cx.cohomology(ctx.q_max)
        except NonzeroCurvature as exc:
            out.append(f"{U.name}: {exc}")
        out += [f"{U.name}: {w}" for w in cx.warnings]
    return out


@check("derham.exactness")
def _dr_exact(ctx: CheckContext) -> list[str]:
    ctx.need_degree()
    mod = ctx.need_module()
    cx = DeRhamComplex(mod, mod)
    E = euler_field(mod)
    out = ident.homotopy_identity(cx, E, ctx.q_max) + ident.lie_euler_is_identity(cx, E, ctx.q_max)
    H = [r["H"] for r in cx.cohomology(ctx.q_max)]
    if any(H):
        out.append(f"cohomology is not zero: {H}")
    return out


# -- runner ---------------------------------------------------------------------


def run_checks(algebra: Algebra, module: ModuleOverAlgebra | None, q_max: int = 3,
               seed: int = 0, only: list[str] | None = None) -> list[CheckResult]:
    ctx = CheckContext(algebra, module, q_max, seed)
    results = []
    for tag in sorted(CHECKS):
        if only is not None and tag not in only:
            continue
        try:
            fails = CHECKS[tag](ctx)
            results.append(CheckResult(tag, "fail" if fails else "pass", sorted(set(fails))))
        except Skip as exc:
            results.append(CheckResult(tag, "skip", [str(exc)]))
    return results


def report(results: list[CheckResult], algebra: Algebra, module: ModuleOverAlgebra | None,
           q_max: int, seed: int) -> dict:
    counts = {s: sum(r.status == s for r in results) for s in ("pass", "fail", "skip")}
    return {
        "algebra": algebra.name,
        "module": module.name if module is not None else None,
        "q_max": q_max,
        "seed": seed,
        "summary": counts,
        "checks": [r.as_json() for r in results],
    }
