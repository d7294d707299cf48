"""The ``modan`` command line.

Exit codes: 0 success, 1 a validation or invariant failure, 2 a usage error.
"""

from __future__ import annotations

import functools
import logging
import sys
from fractions import Fraction

import click

from . import checks as checks_mod
from . import identities as ident
from . import io
from .algebra import AlgebraError
from .derham import DeRhamComplex, NonzeroCurvature, euler_field, homotopy_check, lift_kappa
from .derivation import (PotentialNotALinear, connection_from_potential, derivation_space,
                         module_derivation_space)
from .exactlin import Matrix, NotInvertible
from .gauge import NotALinear, gauge, make_automorphism
from .hochschild import HochschildComplex, KappaNotALinear, NonzeroResidual
from .module import NotFree, endomorphisms, hom_into_annihilator
from .multiplier import (module_multiplier_space, multiplier_space, projection_image,
                         projection_kernel)
from .oracle import DEFAULT_CAP, CapExceeded, check_agreement, compare


class Failure(click.ClickException):
    exit_code = 1


def _settings(ctx: click.Context, **overrides) -> dict:
    obj = dict(ctx.find_root().obj or {})
    for k, v in overrides.items():
        if v is not None:
            obj[k] = v
    return obj


def common(fn):
    """Per-command copies of the global flags; they override the group values."""
    @click.option("--qmax", type=click.IntRange(min=0), default=None)
    @click.option("--seed", type=int, default=None)
    @click.option("--json", "as_json", is_flag=True, default=None)
    @click.pass_context
    @functools.wraps(fn)
    def wrapper(ctx, qmax, seed, as_json, **kw):
        opts = _settings(ctx, qmax=qmax, seed=seed, as_json=as_json)
        return fn(opts, **kw)
    return wrapper


def _load(path: str) -> io.Workspace:
    try:
        return io.load_workspace(path)
    except (io.ParseError, AlgebraError) as exc:
        raise Failure(str(exc)) from exc


def _need_module(ws: io.Workspace):
    if ws.module is None:
        raise click.UsageError("this command needs a \"module\" block in the workspace file")
    return ws.module


def _emit(opts: dict, payload: dict, table: list[tuple] | None = None, header: tuple | None = None) -> None:
    if opts.get("as_json"):
        click.echo(io.dumps(payload))
        return
    if table is None:
        for k, v in payload.items():
            click.echo(f"{k}: {v}")
        return
    rows = [tuple(str(c) for c in r) for r in ([header] if header else []) + table]
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))] if rows else []
    for r in rows:
        click.echo("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())


def _fmt_matrix(m: Matrix) -> str:
    return "[" + "; ".join(" ".join(io.fmt(x) for x in row) for row in m.rows) + "]"


@click.group()
@click.option("--qmax", type=click.IntRange(min=0), default=3, show_default=True,
              help="Highest cochain/form degree.")
@click.option("--seed", type=int, default=0, show_default=True, help="Seed for random elements.")
@click.option("--json", "as_json", is_flag=True, help="Emit JSON instead of tables.")
@click.option("-v", "--verbose", is_flag=True, help="Log warnings to stderr.")
@click.pass_context
def main(ctx, qmax, seed, as_json, verbose):
    """Multipliers, derivations and their cohomology over finite-dimensional algebras."""
    logging.basicConfig(level=logging.WARNING if verbose else logging.ERROR)
    ctx.obj = {"qmax": qmax, "seed": seed, "as_json": as_json}


@main.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@common
def validate(opts, file):
    """Check the algebra and module axioms of a workspace file."""
    ws = _load(file)
    payload = {"valid": True, "algebra": ws.algebra.name, "algebra_dim": ws.algebra.dim}
    if ws.module is not None:
        payload.update(module=ws.module.name, module_dim=ws.module.dim)
    _emit(opts, payload)


@main.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@common
def multipliers(opts, file):
    """Basis of the multiplier algebra."""
    ws = _load(file)
    sp = multiplier_space(ws.algebra)
    payload = {"algebra": ws.algebra.name, "dim": sp.dim,
               "basis": [io.matrix_json(b[0]) for b in sp.basis_ops]}
    _emit(opts, payload, [(k, _fmt_matrix(b[0])) for k, b in enumerate(sp.basis_ops)], ("k", "R"))


@main.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@common
def derivations(opts, file):
    """Basis of the derivation algebra."""
    ws = _load(file)
    sp = derivation_space(ws.algebra)
    payload = {"algebra": ws.algebra.name, "dim": sp.dim,
               "basis": [io.matrix_json(b[0]) for b in sp.basis_ops]}
    _emit(opts, payload, [(k, _fmt_matrix(b[0])) for k, b in enumerate(sp.basis_ops)], ("k", "X"))


def _pair_payload(mod, sp, fiber_space, fiber_name) -> tuple[dict, list]:
    payload = {
        "module": mod.name, "dim": sp.dim,
        "projection_image_dim": projection_image(sp).dim,
        "projection_kernel_dim": projection_kernel(sp).dim,
        fiber_name: fiber_space.dim,
        "basis": [{"module_op": io.matrix_json(a), "algebra_op": io.matrix_json(b)}
                  for a, b in sp.basis_ops],
    }
    table = [(k, _fmt_matrix(a), _fmt_matrix(b)) for k, (a, b) in enumerate(sp.basis_ops)]
    return payload, table


@main.command("module-multipliers")
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@common
def module_multipliers_cmd(opts, file):
    """Basis of the module multipliers (Delta, R) and the fiber dimension."""
    ws = _load(file)
    mod = _need_module(ws)
    payload, table = _pair_payload(mod, module_multiplier_space(mod), hom_into_annihilator(mod),
                                   "hom_into_annihilator_dim")
    _emit(opts, payload, table, ("k", "Delta", "R"))


@main.command("module-derivations")
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@common
def module_derivations_cmd(opts, file):
    """Basis of the module derivations (nabla, X) and the fiber dimension."""
    ws = _load(file)
    mod = _need_module(ws)
    payload, table = _pair_payload(mod, module_derivation_space(mod), endomorphisms(mod),
                                   "endomorphism_dim")
    _emit(opts, payload, table, ("k", "nabla", "X"))


def _potential(ws: io.Workspace, path: str | None, m: int) -> dict:
    try:
        if path is not None:
            return io.parse_potential(io.read_json(path), m)
        if "potential" in ws.extra:
            return io.parse_potential(ws.extra["potential"], m)
    except io.ParseError as exc:
        raise click.UsageError(str(exc)) from exc
    return {}


@main.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--potential", "potential_file", type=click.Path(exists=True, dir_okay=False),
              help="Potential file; defaults to the workspace \"potential\" block or zero.")
@common
def connection(opts, file, potential_file):
    """Connection = componentwise lift + potential: flags and curvature."""
    ws = _load(file)
    mod = _need_module(ws)
    pot = _potential(ws, potential_file, mod.dim)
    try:
        sec = connection_from_potential(mod, pot)
    except (PotentialNotALinear, NotFree) as exc:
        raise Failure(str(exc)) from exc
    d = derivation_space(mod.base).dim
    curv = {f"{j},{k}": io.matrix_json(sec.curvature(j, k)) for j in range(d) for k in range(j + 1, d)}
    payload = {"module": mod.name, "flags": sec.flags, "curvature": curv,
               "images": [{"module_op": io.matrix_json(p.module_op), "algebra_op": io.matrix_json(p.algebra_op)}
                          for p in (sec(b[0]) for b in derivation_space(mod.base).basis_ops)]}
    table = [(k, v) for k, v in sec.flags.items()]
    table += [(f"F({k})", "0" if all(x == "0" for r in v for x in r) else "nonzero") for k, v in curv.items()]
    _emit(opts, payload, table, ("property", "value"))


@main.command("gauge")
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--g", "g_file", type=click.Path(exists=True, dir_okay=False),
              help="Automorphism matrix; defaults to the workspace \"g\" block.")
@click.option("--target", type=click.Choice(["multiplier", "derivation"]), required=True)
@click.option("--input", "pair_file", type=click.Path(exists=True, dir_okay=False),
              help="Pair file; defaults to the workspace \"pair\" block.")
@common
def gauge_cmd(opts, file, g_file, target, pair_file):
    """Apply the gauge transform of G to a multiplier or derivation pair."""
    ws = _load(file)
    mod = _need_module(ws)
    m, n = mod.dim, mod.base.dim
    try:
        graw = io.read_json(g_file) if g_file else ws.extra.get("g")
        praw = io.read_json(pair_file) if pair_file else ws.extra.get("pair")
        if graw is None or praw is None:
            raise click.UsageError("need both an automorphism (--g) and a pair (--input)")
        g = io.parse_matrix(graw, (m, m), "g")
        pair = io.parse_pair(praw, m, n)
    except io.ParseError as exc:
        raise click.UsageError(str(exc)) from exc
    try:
        G = make_automorphism(mod, g)
    except (NotALinear, NotInvertible) as exc:
        raise Failure(str(exc)) from exc
    space = module_multiplier_space(mod) if target == "multiplier" else module_derivation_space(mod)
    if not space.contains(pair.as_tuple()):
        raise Failure(f"input pair is not a module {target}")
    out = gauge(G, pair)
    fiber = projection_kernel(space)
    payload = {
        "target": target,
        "result": {"module_op": io.matrix_json(out.module_op), "algebra_op": io.matrix_json(out.algebra_op)},
        "in_space": space.contains(out.as_tuple()),
        "same_base": out.algebra_op == pair.algebra_op,
        "difference_in_fiber_directions": fiber.contains((out.module_op - pair.module_op).flatten()),
        "inverse": io.matrix_json(G.g_inv),
    }
    _emit(opts, {k: v for k, v in payload.items()})
    if not (payload["in_space"] and payload["same_base"] and payload["difference_in_fiber_directions"]):
        sys.exit(1)


@main.group()
def cohomology():
    """Hochschild and de Rham cohomology dimensions."""


def _kappa_matrix(path: str, shape: tuple[int, int]) -> Matrix:
    try:
        return io.parse_matrix(io.read_json(path), shape, "kappa")
    except io.ParseError as exc:
        raise click.UsageError(str(exc)) from exc


def _cohomology_table(opts, payload, rows):
    table = [(r["q"], r["dim"], r["rank"], r["H"]) for r in rows]
    _emit(opts, payload, table, ("q", "dim", "rank", "H"))


def _carrier(ws: io.Workspace, on: str):
    if on == "algebra" or (on == "auto" and ws.module is None):
        return ws.algebra
    return _need_module(ws)


@cohomology.command("hochschild")
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--kappa", default="id", show_default=True, help="\"id\" or a matrix file.")
@click.option("--on", type=click.Choice(["auto", "algebra", "module"]), default="auto", show_default=True)
@common
def cohomology_hochschild(opts, file, kappa, on):
    """Hochschild cohomology of the multiplier cochains (U = V)."""
    ws = _load(file)
    U = _carrier(ws, on)
    hc0 = HochschildComplex(U, U)
    k = None if kappa == "id" else _kappa_matrix(kappa, (hc0.dv, hc0.du))
    try:
        hc = HochschildComplex(U, U, k) if k is not None else hc0
        rows = hc.cohomology(opts["qmax"])
    except (NonzeroResidual, KappaNotALinear) as exc:
        raise Failure(str(exc)) from exc
    _cohomology_table(opts, {"carrier": U.name, "kappa": kappa, "rows": rows, "warnings": hc.warnings}, rows)


@cohomology.command("derham")
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--kappa", default="id", show_default=True,
              help="\"id\", \"lift\", \"potential:<file>\" or a matrix file.")
@click.option("--on", type=click.Choice(["auto", "algebra", "module"]), default="auto", show_default=True)
@common
def cohomology_derham(opts, file, kappa, on):
    """De Rham cohomology of forms on the derivations."""
    ws = _load(file)
    try:
        if kappa == "id":
            U = V = _carrier(ws, on)
            k = None
        elif kappa == "lift" or kappa.startswith("potential:"):
            V = _need_module(ws)
            U = ws.algebra
            if kappa == "lift":
                k = lift_kappa(V)
            else:
                pot = _potential(ws, kappa.split(":", 1)[1], V.dim)
                k = connection_from_potential(V, pot).matrix
        else:
            V = _carrier(ws, on)
            U = V
            n = DeRhamComplex(U, V).du
            k = _kappa_matrix(kappa, (n, n))
        cx = DeRhamComplex(U, V, k)
        rows = cx.cohomology(opts["qmax"])
    except (NonzeroCurvature, KappaNotALinear, PotentialNotALinear, NotFree) as exc:
        raise Failure(str(exc)) from exc
    _cohomology_table(opts, {"source": U.name, "values": V.name, "kappa": kappa, "rows": rows,
                             "warnings": cx.warnings}, rows)


@main.command("check-magic")
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@common
def check_magic(opts, file):
    """Verify L = d i + i d and [L, d] = 0 on every basis derivation and form."""
    ws = _load(file)
    results = []
    for U in [ws.algebra] + ([ws.module] if ws.module is not None else []):
        cx = DeRhamComplex(U, U)
        if not cx.is_flat():
            results.append((U.name, "skip", ["curvature is nonzero"]))
            continue
        fails = ident.cartan_magic(cx, opts["qmax"]) + ident.lie_commutes_with_d(cx, opts["qmax"])
        results.append((U.name, "fail" if fails else "pass", fails))
    payload = {"q_max": opts["qmax"], "results": [{"carrier": c, "status": s, "detail": d} for c, s, d in results]}
    _emit(opts, payload, [(c, s, "; ".join(d)) for c, s, d in results], ("carrier", "status", "detail"))
    if any(s == "fail" for _, s, _ in results):
        sys.exit(1)


@main.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@common
def homotopy(opts, file):
    """Verify id = i_E d + d i_E on every basis form, E = (id_M, 0)."""
    ws = _load(file)
    mod = _need_module(ws)
    rep = homotopy_check(mod, opts["qmax"])
    payload = {"module": mod.name, "q_max": rep.q_max, "ok": rep.ok,
               "basis_forms_checked": {str(k): v for k, v in rep.checked.items()},
               "failures": [list(f) for f in rep.failures],
               "euler_field": [io.fmt(Fraction(x)) for x in euler_field(mod)]}
    _emit(opts, payload, [(q, n) for q, n in rep.checked.items()] + [("ok", rep.ok)], ("q", "forms"))
    if not rep.ok:
        sys.exit(1)


@main.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--only", multiple=True, help="Run only these check tags.")
@common
def check(opts, file, only):
    """Run the whole invariant suite; exit 1 if any check fails."""
    unknown = sorted(set(only) - set(checks_mod.CHECKS))
    if unknown:
        raise click.BadParameter(f"unknown check tags: {', '.join(unknown)}", param_hint="--only")
    ws = _load(file)
    results = checks_mod.run_checks(ws.algebra, ws.module, opts["qmax"], opts["seed"], list(only) or None)
    payload = checks_mod.report(results, ws.algebra, ws.module, opts["qmax"], opts["seed"])
    _emit(opts, payload, [(r.tag, r.status, "; ".join(r.detail)) for r in results], ("tag", "status", "detail"))
    if any(r.status == "fail" for r in results):
        sys.exit(1)


@main.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--cap", type=click.IntRange(min=0), default=DEFAULT_CAP, show_default=True,
              help="Refuse when the base solution spaces are larger than this in total.")
@common
def oracle(opts, file, cap):
    """Recompute every dimension naively and compare with the main path."""
    ws = _load(file)
    try:
        rows = compare(ws.algebra, ws.module, opts["qmax"], cap=cap)
    except CapExceeded as exc:
        raise Failure(str(exc)) from exc
    payload = {"q_max": opts["qmax"], "rows": rows}
    _emit(opts, payload, [(r["statement"], r["primary"], r["oracle"], r["status"]) for r in rows],
          ("statement", "primary", "oracle", "status"))
    try:
        check_agreement(rows)
    except AssertionError as exc:
        click.echo(f"Error: {exc}", err=True)
        sys.exit(1)


if __name__ == "__main__":  # pragma: no cover
    main()
