"""JSON reading and writing.  Rationals travel as strings ``"p/q"`` or ``"p"``.

A workspace file holds ``{"algebra": {...}, "module": {...}}``; the module
block is optional, and ``kappa``, ``potential``, ``g`` and ``pair`` blocks may
sit alongside it so that one file reproduces a whole run.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Mapping

from .algebra import Algebra
from .exactlin import Matrix, Subspace, format_fraction, to_fraction
from .module import ModuleOverAlgebra, free_module
from .operators import PairOperator


class ParseError(ValueError):
    pass


def _scalar(x: Any, where: str) -> Fraction:
    if isinstance(x, bool):
        raise ParseError(f"{where}: booleans are not scalars")
    if isinstance(x, float):
        raise ParseError(f"{where}: floats are not accepted, write \"p/q\"")
    try:
        return to_fraction(x)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"{where}: bad rational {x!r}") from exc


def _tensor(raw: Any, n: int, m: int, where: str) -> list[list[list[Fraction]]]:
    """n x m x m nested lists of scalars."""
    if not isinstance(raw, list) or len(raw) != n:
        raise ParseError(f"{where}: expected {n} rows")
    out = []
    for i, row in enumerate(raw):
        if not isinstance(row, list) or len(row) != m:
            raise ParseError(f"{where}[{i}]: expected {m} entries")
        block = []
        for j, coords in enumerate(row):
            if not isinstance(coords, list) or len(coords) != m:
                raise ParseError(f"{where}[{i}][{j}]: expected {m} coordinates")
            block.append([_scalar(c, f"{where}[{i}][{j}]") for c in coords])
        out.append(block)
    return out


def _basis(raw: Any, where: str) -> list[str]:
    if not isinstance(raw, list) or not all(isinstance(b, str) for b in raw):
        raise ParseError(f"{where}: basis must be a list of strings")
    if len(set(raw)) != len(raw):
        raise ParseError(f"{where}: basis names repeat")
    return list(raw)


def parse_algebra(raw: Mapping) -> Algebra:
    if not isinstance(raw, Mapping):
        raise ParseError("algebra block must be an object")
    basis = _basis(raw.get("basis", []), "algebra.basis")
    n = len(basis)
    products = _tensor(raw.get("products", []), n, n, "algebra.products")
    return Algebra(str(raw.get("name", "A")), basis, products)


def parse_module(raw: Mapping, base: Algebra) -> ModuleOverAlgebra:
    if not isinstance(raw, Mapping):
        raise ParseError("module block must be an object")
    basis = _basis(raw.get("basis", []), "module.basis")
    act = raw.get("action", [])
    m = len(basis)
    if not isinstance(act, list) or len(act) != base.dim:
        raise ParseError(f"module.action: expected {base.dim} rows")
    action = []
    for i, row in enumerate(act):
        if not isinstance(row, list) or len(row) != m:
            raise ParseError(f"module.action[{i}]: expected {m} entries")
        block = []
        for j, coords in enumerate(row):
            if not isinstance(coords, list) or len(coords) != m:
                raise ParseError(f"module.action[{i}][{j}]: expected {m} coordinates")
            block.append([_scalar(c, f"module.action[{i}][{j}]") for c in coords])
        action.append(block)
    mod = ModuleOverAlgebra(base, str(raw.get("name", "M")), basis, action)
    mod.free_rank = _detect_free_rank(mod)
    return mod


def _detect_free_rank(mod: ModuleOverAlgebra) -> int | None:
    """Rank r when the action is exactly the block-diagonal action of A^r."""
    n = mod.base.dim
    if n == 0 or mod.dim % n:
        return 0 if mod.dim == 0 else None
    r = mod.dim // n
    return r if free_module(mod.base, r).action == mod.action else None


def parse_matrix(raw: Any, shape: tuple[int, int] | None = None, where: str = "matrix") -> Matrix:
    """A matrix as a list of rows."""
    if isinstance(raw, Mapping) and "matrix" in raw:
        raw = raw["matrix"]
    if not isinstance(raw, list) or not all(isinstance(r, list) for r in raw):
        raise ParseError(f"{where}: expected a list of rows")
    ncols = len(raw[0]) if raw else (shape[1] if shape else 0)
    if any(len(r) != ncols for r in raw):
        raise ParseError(f"{where}: ragged rows")
    mat = Matrix([[_scalar(x, where) for x in r] for r in raw], ncols)
    if shape is not None and mat.shape != shape:
        raise ParseError(f"{where}: expected shape {shape}, got {mat.shape}")
    return mat


def parse_pair(raw: Mapping, m: int, n: int) -> PairOperator:
    if not isinstance(raw, Mapping) or "module_op" not in raw or "algebra_op" not in raw:
        raise ParseError("pair needs module_op and algebra_op")
    return PairOperator(parse_matrix(raw["module_op"], (m, m), "module_op"),
                        parse_matrix(raw["algebra_op"], (n, n), "algebra_op"))


def parse_potential(raw: Any, m: int) -> dict[int, Matrix]:
    """``{"0": matrix, ...}`` or ``[[index, matrix], ...]``."""
    if isinstance(raw, Mapping) and "potential" in raw:
        raw = raw["potential"]
    items = raw.items() if isinstance(raw, Mapping) else raw
    if not isinstance(items, (list, type({}.items()))):
        raise ParseError("potential must map derivation indices to matrices")
    out = {}
    for entry in items:
        try:
            k, mat = entry
            k = int(k)
        except (TypeError, ValueError) as exc:
            raise ParseError(f"bad potential entry {entry!r}") from exc
        out[k] = parse_matrix(mat, (m, m), f"potential[{k}]")
    return out


@dataclass
class Workspace:
    algebra: Algebra
    module: ModuleOverAlgebra | None = None
    extra: dict = field(default_factory=dict)


def parse_workspace(raw: Any) -> Workspace:
    if not isinstance(raw, Mapping) or "algebra" not in raw:
        raise ParseError("workspace needs an \"algebra\" block")
    alg = parse_algebra(raw["algebra"])
    mod = parse_module(raw["module"], alg) if raw.get("module") is not None else None
    extra = {k: v for k, v in raw.items() if k not in ("algebra", "module")}
    return Workspace(alg, mod, extra)


def read_json(path: str | Path) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc})") from exc


def load_workspace(path: str | Path) -> Workspace:
    return parse_workspace(read_json(path))


# -- output ---------------------------------------------------------------


def fmt(x: Fraction) -> str:
    return format_fraction(x)


def matrix_json(m: Matrix) -> list[list[str]]:
    return [[fmt(x) for x in row] for row in m.rows]


def tensor_json(t) -> list:
    return [[[fmt(Fraction(x)) for x in coords] for coords in row] for row in t]


def subspace_json(s: Subspace) -> dict:
    return {"ambient_dim": s.ambient_dim, "dim": s.dim,
            "basis": [[fmt(x) for x in b] for b in s.basis]}


def subspace_from_json(raw: Mapping) -> Subspace:
    n = int(raw["ambient_dim"])
    return Subspace.span([[_scalar(x, "basis") for x in b] for b in raw["basis"]], n)


def algebra_json(a: Algebra) -> dict:
    return {"name": a.name, "basis": list(a.basis), "products": tensor_json(a.products)}


def module_json(mod: ModuleOverAlgebra) -> dict:
    return {"name": mod.name, "basis": list(mod.basis), "action": tensor_json(mod.action)}


def workspace_json(alg: Algebra, mod: ModuleOverAlgebra | None = None) -> dict:
    out = {"algebra": algebra_json(alg)}
    if mod is not None:
        out["module"] = module_json(mod)
    return out


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)
