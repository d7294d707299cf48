"""The canonical small algebras and modules used throughout the tests and CLI."""

from __future__ import annotations

from .algebra import Algebra
from .module import ModuleOverAlgebra, adjoint_module, free_module


def field() -> Algebra:
    """A1: the ground field, e*e = e."""
    return Algebra("A1", ["e"], [[[1]]])


def dual_numbers() -> Algebra:
    """A2: Q[x]/(x^2) on the basis (e, x)."""
    return Algebra("A2", ["e", "x"], [
        [[1, 0], [0, 1]],
        [[0, 1], [0, 0]],
    ])


def truncated_ideal() -> Algebra:
    """A3: x*Q[x]/(x^3) on the basis (u, v) with u*u = v; no unit."""
    return Algebra("A3", ["u", "v"], [
        [[0, 1], [0, 0]],
        [[0, 0], [0, 0]],
    ])


def zero_algebra() -> Algebra:
    return Algebra("A0", [], [])


def m2() -> ModuleOverAlgebra:
    mod = free_module(dual_numbers(), 1, name="M2")
    return mod


def m2r2() -> ModuleOverAlgebra:
    return free_module(dual_numbers(), 2, name="M2r2")


def ad3() -> ModuleOverAlgebra:
    mod = adjoint_module(truncated_ideal())
    mod.name = "AD3"
    return mod


ALGEBRAS = {"A1": field, "A2": dual_numbers, "A3": truncated_ideal}
MODULES = {"M2": m2, "M2r2": m2r2, "AD3": ad3}
