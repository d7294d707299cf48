"""Identity checks on the two complexes, shared by the check runner and the tests.

Every function returns a list of failure descriptions; an empty list means
the identity held exactly on everything that was tried.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from .derham import DeRhamComplex, Form, wedge
from .exactlin import unit_vector
from .hochschild import Cochain, HochschildComplex


def random_coords(rng: random.Random, n: int, bound: int = 3) -> tuple[Fraction, ...]:
    return tuple(Fraction(rng.randint(-bound, bound)) for _ in range(n))


# -- Hochschild ---------------------------------------------------------------


def random_cochain(hc: HochschildComplex, q: int, rng: random.Random) -> Cochain:
    return hc.from_coords(q, random_coords(rng, hc.space(q).dim))


def hochschild_delta_squared(hc: HochschildComplex, q_max: int) -> list[str]:
    """delta^(q+1) delta^q = 0 as a matrix product for q + 1 <= q_max."""
    out = []
    for q in range(q_max):
        prod = hc.delta_matrix(q + 1) @ hc.delta_matrix(q)
        if not prod.is_zero():
            out.append(f"delta o delta nonzero from degree {q}")
    return out


def hochschild_leibniz(hc: HochschildComplex, rng: random.Random, q_max: int,
                       trials: int = 2) -> list[str]:
    """delta(c1 (x) c2) = delta c1 (x) c2 + (-1)^p c1 (x) delta c2 for p + q < q_max."""
    out = []
    for p in range(q_max):
        for q in range(q_max - p):
            for _ in range(trials):
                c1, c2 = random_cochain(hc, p, rng), random_cochain(hc, q, rng)
                lhs = hc.delta(hc.tensor(c1, c2))
                a = hc.tensor(hc.delta(c1), c2)
                b = hc.tensor(c1, hc.delta(c2))
                sign = -1 if p % 2 else 1
                rhs = tuple(x + sign * y for x, y in zip(a.values, b.values))
                if lhs.values != rhs:
                    out.append(f"graded Leibniz fails for degrees ({p}, {q})")
    return out


# -- de Rham ------------------------------------------------------------------


def random_form(cx: DeRhamComplex, q: int, rng: random.Random) -> Form:
    if cx.ambient(q) == 0:
        return cx.zero(q)
    return cx.from_coords(q, random_coords(rng, cx.space(q).dim))


def _basis_xis(cx: DeRhamComplex) -> list[tuple[Fraction, ...]]:
    return [unit_vector(cx.du, a) for a in range(cx.du)]


def _commutator(f, g, w: Form) -> Form:
    return f(g(w)) - g(f(w))


def derham_d_squared(cx: DeRhamComplex, q_max: int) -> list[str]:
    out = []
    for q in range(q_max):
        if cx.ambient(q + 2) == 0:
            continue
        prod = cx.d_matrix(q + 1) @ cx.d_matrix(q)
        if not prod.is_zero():
            out.append(f"d o d nonzero from degree {q}")
    return out


def derham_membership(cx: DeRhamComplex, q_max: int, rng: random.Random) -> list[str]:
    """d, L and i keep basis forms A-multilinear."""
    out = []
    xi = random_coords(rng, cx.du)
    for q in range(q_max + 1):
        for k, w in enumerate(cx.basis_forms(q) if cx.ambient(q) else []):
            for name, img in (("d", cx.d(w)), ("L", cx.lie(xi, w)), ("i", cx.interior(xi, w))):
                if not cx.contains(img):
                    out.append(f"{name} of basis form {k} in degree {q} is not A-multilinear")
    return out


def cartan_magic(cx: DeRhamComplex, q_max: int) -> list[str]:
    """L_xi = d i_xi + i_xi d on every basis derivation and basis form."""
    out = []
    for a, xi in enumerate(_basis_xis(cx)):
        for q in range(q_max + 1):
            for k, w in enumerate(cx.basis_forms(q) if cx.ambient(q) else []):
                rhs = cx.d(cx.interior(xi, w)) + cx.interior(xi, cx.d(w))
                if cx.lie(xi, w) != rhs:
                    out.append(f"magic formula fails for xi_{a} on basis form {k} of degree {q}")
    return out


def lie_commutes_with_d(cx: DeRhamComplex, q_max: int) -> list[str]:
    out = []
    for a, xi in enumerate(_basis_xis(cx)):
        for q in range(q_max + 1):
            for k, w in enumerate(cx.basis_forms(q) if cx.ambient(q) else []):
                if cx.lie(xi, cx.d(w)) != cx.d(cx.lie(xi, w)):
                    out.append(f"[L_xi_{a}, d] nonzero on basis form {k} of degree {q}")
    return out


def interior_anticommute(cx: DeRhamComplex, q_max: int, rng: random.Random) -> list[str]:
    out = []
    for q in range(q_max + 1):
        x1, x2 = random_coords(rng, cx.du), random_coords(rng, cx.du)
        w = random_form(cx, q, rng)
        s = cx.interior(x1, cx.interior(x2, w)) + cx.interior(x2, cx.interior(x1, w))
        if not s.is_zero():
            out.append(f"interior products do not anticommute in degree {q}")
    return out


def _pairs(q_max: int):
    for p in range(q_max + 1):
        for q in range(q_max + 1 - p):
            yield p, q


def interior_antiderivation(cx: DeRhamComplex, q_max: int, rng: random.Random) -> list[str]:
    sc = cx.scalar_complex
    out = []
    for p, q in _pairs(q_max):
        xi = random_coords(rng, cx.du)
        phi, w = random_form(sc, p, rng), random_form(cx, q, rng)
        lhs = cx.interior(xi, wedge(phi, w))
        rhs = wedge(sc.interior(xi, phi), w) + wedge(phi, cx.interior(xi, w)).scale((-1) ** p)
        if lhs != rhs:
            out.append(f"i_xi is not an antiderivation for degrees ({p}, {q})")
    return out


def lie_derivation_law(cx: DeRhamComplex, q_max: int, rng: random.Random) -> list[str]:
    sc = cx.scalar_complex
    out = []
    for p, q in _pairs(q_max):
        xi = random_coords(rng, cx.du)
        phi, w = random_form(sc, p, rng), random_form(cx, q, rng)
        lhs = cx.lie(xi, wedge(phi, w))
        rhs = wedge(sc.lie(xi, phi), w) + wedge(phi, cx.lie(xi, w))
        if lhs != rhs:
            out.append(f"L_xi is not a derivation for degrees ({p}, {q})")
    return out


def d_leibniz(cx: DeRhamComplex, q_max: int, rng: random.Random) -> list[str]:
    sc = cx.scalar_complex
    out = []
    for p, q in _pairs(q_max):
        phi, w = random_form(sc, p, rng), random_form(cx, q, rng)
        lhs = cx.d(wedge(phi, w))
        rhs = wedge(sc.d(phi), w) + wedge(phi, cx.d(w)).scale((-1) ** p)
        if lhs != rhs:
            out.append(f"d is not a graded derivation for degrees ({p}, {q})")
    return out


def lie_bracket_law(cx: DeRhamComplex, q_max: int, rng: random.Random) -> list[str]:
    """[L_a, L_b] = L_[a,b] on basis derivation pairs."""
    out = []
    xis = _basis_xis(cx)
    for q in range(q_max + 1):
        w = random_form(cx, q, rng)
        for a in range(cx.du):
            for b in range(a + 1, cx.du):
                lhs = _commutator(lambda v: cx.lie(xis[a], v), lambda v: cx.lie(xis[b], v), w)
                if lhs != cx.lie(cx.src.bracket(xis[a], xis[b]), w):
                    out.append(f"[L_{a}, L_{b}] != L_[{a},{b}] in degree {q}")
    return out


def lie_interior_law(cx: DeRhamComplex, q_max: int, rng: random.Random) -> list[str]:
    """[L_a, i_b] = i_[a,b] on basis derivation pairs."""
    out = []
    xis = _basis_xis(cx)
    for q in range(q_max + 1):
        w = random_form(cx, q, rng)
        for a in range(cx.du):
            for b in range(cx.du):
                lhs = _commutator(lambda v: cx.lie(xis[a], v), lambda v: cx.interior(xis[b], v), w)
                if lhs != cx.interior(cx.src.bracket(xis[a], xis[b]), w):
                    out.append(f"[L_{a}, i_{b}] != i_[{a},{b}] in degree {q}")
    return out


def wedge_laws(cx: DeRhamComplex, q_max: int, rng: random.Random) -> list[str]:
    """Associativity, and graded commutativity on algebra-valued forms."""
    sc = cx.scalar_complex
    out = []
    for p, q in _pairs(q_max):
        phi, psi = random_form(sc, p, rng), random_form(sc, q, rng)
        if wedge(phi, psi) != wedge(psi, phi).scale((-1) ** (p * q)):
            out.append(f"wedge is not graded commutative for degrees ({p}, {q})")
        for r in range(q_max + 1 - p - q):
            w = random_form(cx, r, rng)
            if wedge(wedge(phi, psi), w) != wedge(phi, wedge(psi, w)):
                out.append(f"wedge is not associative for degrees ({p}, {q}, {r})")
    return out


def homotopy_identity(cx: DeRhamComplex, E: Sequence[Fraction], q_max: int) -> list[str]:
    out = []
    for q in range(q_max + 1):
        for k, w in enumerate(cx.basis_forms(q) if cx.ambient(q) else []):
            if cx.interior(E, cx.d(w)) + cx.d(cx.interior(E, w)) != w:
                out.append(f"homotopy fails on basis form {k} of degree {q}")
    return out


def lie_euler_is_identity(cx: DeRhamComplex, E: Sequence[Fraction], q_max: int) -> list[str]:
    out = []
    for q in range(q_max + 1):
        for k, w in enumerate(cx.basis_forms(q) if cx.ambient(q) else []):
            if cx.lie(E, w) != w:
                out.append(f"L_E differs from the identity on basis form {k} of degree {q}")
    return out
