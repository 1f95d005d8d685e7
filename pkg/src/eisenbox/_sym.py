"""Bridges to sympy for factorization-only tasks (gcds, irreducible factors)."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import sympy

from .series import MPoly


def _symbols(n: int):
    return sympy.symbols(f"v0:{n}")


def to_sympy(p: MPoly, gens=None):
    gens = gens or _symbols(p.nvars)
    expr = 0
    for e, c in p.terms.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for g, k in zip(gens, e):
            term *= g**k
        expr += term
    return sympy.Poly(expr, *gens, domain="QQ")


def from_sympy(poly, nvars: int) -> MPoly:
    return MPoly(nvars, {tuple(m): Fraction(int(c.p), int(c.q)) for m, c in poly.terms()})


def is_squarefree_in_last(P: MPoly) -> bool:
    n = P.nvars - 1
    dP = P.derivative(n)
    if dP.is_zero():
        return False
    gens = _symbols(P.nvars)
    g = sympy.gcd(to_sympy(P, gens), to_sympy(dP, gens))
    return g.degree(gens[n]) == 0


def irreducible_factors_univariate(coeffs: Sequence[Fraction]) -> list[list[Fraction]]:
    """Irreducible factors over Q of sum coeffs[i] c^i, as ascending coefficient lists."""
    c = sympy.Symbol("c")
    expr = sum(sympy.Rational(a.numerator, a.denominator) * c**i for i, a in enumerate(coeffs))
    _, facs = sympy.factor_list(expr, c, domain="QQ")
    out = []
    for f, _mult in facs:
        poly = sympy.Poly(f, c)
        cl = [Fraction(int(x.p), int(x.q)) for x in reversed(poly.all_coeffs())]
        out.append(cl)
    return out


def linear_factor_roots(poly_coeffs: Sequence[MPoly]):
    """Roots in Q(x) of sum poly_coeffs[i] * c^i, with multiplicity, plus the non-linear factors.

    Returns ``(roots, others)``; each root is ``(num, den, mult)`` as MPolys.
    """
    n = poly_coeffs[0].nvars
    gens = _symbols(n + 1)
    cvar = gens[n]
    expr = 0
    for i, a in enumerate(poly_coeffs):
        expr += to_sympy(a, gens[:n]).as_expr() * cvar**i
    _, facs = sympy.factor_list(sympy.expand(expr), *gens, domain="QQ")
    roots, others = [], []
    for f, mult in facs:
        pf = sympy.Poly(f, cvar)
        if pf.degree() == 1:
            a1, a0 = pf.all_coeffs()
            num = sympy.Poly(-a0, *gens[:n], domain="QQ") if n else None
            den = sympy.Poly(a1, *gens[:n], domain="QQ") if n else None
            roots.append((from_sympy(num, n), from_sympy(den, n), mult))
        elif pf.degree() > 1:
            others.append((sympy.sstr(f), mult))
    return roots, others
