"""Weierstrass division and preparation with respect to the last variable.

Inputs are treated as exact polynomials.  Writing exponents as
``(a, b)`` with ``a`` the first n-1 exponents and ``b`` the power of x_n,
the coefficient of ``x'^a x_n^(b+d)`` in ``g = f q + r`` determines
``q_(a,b)`` from entries with smaller ``|a|`` or smaller ``b``.  For each
``a`` the quotient is kept up to ``b <= (cap - |a|) * max(d, 1)``, which is
enough for every coefficient of total degree <= cap to be final.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .series import MPoly, TSeries, exponents_up_to


class RegularityError(ArithmeticError):
    """f(0, ..., 0, x_n) vanishes up to the cap."""


@dataclass(frozen=True)
class DistinguishedPolynomial:
    """``x_n^d + sum_i a_i x_n^(d-i)`` with each ``a_i`` a series in x_1..x_(n-1) vanishing at 0."""

    d: int
    coeffs: tuple[TSeries, ...]  # a_1 .. a_d, in n-1 variables
    nvars: int

    def __post_init__(self):
        if len(self.coeffs) != self.d:
            raise ValueError("need exactly d coefficients")
        for a in self.coeffs:
            if a.constant_term() != 0:
                raise ValueError("coefficients of a distinguished polynomial vanish at the origin")

    def to_series(self, cap: int) -> TSeries:
        n = self.nvars
        terms = {(0,) * (n - 1) + (self.d,): Fraction(1)}
        for i, a in enumerate(self.coeffs, start=1):
            for e, c in a.terms.items():
                terms[tuple(e) + (self.d - i,)] = c
        return TSeries(n, cap, terms)


def regular_order(f: TSeries) -> int:
    """Order of ``f(0, ..., 0, x_n)``."""
    n = f.nvars
    bs = [e[n - 1] for e in f.terms if not any(e[: n - 1])]
    if not bs:
        raise RegularityError(
            "f(0,...,0,x_n) vanishes through the cap; a linear change of coordinates "
            "would make f regular in x_n (not done automatically)"
        )
    return min(bs)


def _split(f: TSeries) -> dict:
    n = f.nvars
    out: dict = {}
    for e, c in f.terms.items():
        out.setdefault(e[: n - 1], {})[e[n - 1]] = c
    return out


def _bound(cap: int, deg_a: int, d: int) -> int:
    return (cap - deg_a) * max(d, 1)


def divide(g: TSeries, f: TSeries, cap: int | None = None) -> tuple[TSeries, TSeries]:
    """``(q, r)`` with ``g = f q + r`` through total degree ``cap`` and ``deg_(x_n) r < d``.

    ``r`` is returned as a series in all n variables.
    """
    if g.nvars != f.nvars:
        raise ValueError("nvars mismatch")
    n = f.nvars
    cap = min(g.cap, f.cap) if cap is None else cap
    d = regular_order(f)
    lead = f.terms[(0,) * (n - 1) + (d,)]
    F = _split(f)
    G = _split(g)
    f_items = [(c, e, v) for c, row in F.items() for e, v in row.items() if (sum(c), e) != (0, d)]
    q: dict = {}  # a -> {b: coeff}
    r: dict = {}
    for a in exponents_up_to(n - 1, cap):
        da = sum(a)
        top = _bound(cap, da, d)
        qa: dict = {}
        q[a] = qa
        grow = G.get(a, {})
        for beta in range(top + d + 1):
            acc = Fraction(grow.get(beta, 0))
            for c, e, v in f_items:
                if e > beta:
                    continue
                a2 = tuple(x - y for x, y in zip(a, c))
                if min(a2, default=0) < 0:
                    continue
                qv = q.get(a2, {}).get(beta - e)
                if qv:
                    acc -= v * qv
            if beta >= d:
                val = acc / lead
                if val:
                    qa[beta - d] = val
            elif acc:
                r.setdefault(a, {})[beta] = acc
    qt = {a + (b,): v for a, row in q.items() for b, v in row.items() if sum(a) + b <= cap}
    rt = {a + (b,): v for a, row in r.items() for b, v in row.items() if sum(a) + b <= cap}
    return TSeries(n, cap, qt), TSeries(n, cap, rt)


def prepare(f: TSeries, cap: int | None = None) -> tuple[DistinguishedPolynomial, TSeries]:
    """``f = W u`` with W distinguished in x_n and ``u(0) != 0``, through total degree cap.

    From ``x_n^d = f q + r``: ``W = x_n^d - r`` and ``u = 1/q``.
    """
    n = f.nvars
    cap = f.cap if cap is None else cap
    d = regular_order(f)
    xd = TSeries(n, cap, {(0,) * (n - 1) + (d,): 1})
    q, r = divide(xd, f, cap)
    coeffs = []
    for i in range(1, d + 1):
        k = d - i
        terms = {e[: n - 1]: -v for e, v in r.terms.items() if e[n - 1] == k}
        coeffs.append(TSeries(n - 1, cap - k, terms))
    u = q.inverse()
    return DistinguishedPolynomial(d, tuple(coeffs), n), u


def residual(g: TSeries, f: TSeries, q: TSeries, r: TSeries, cap: int) -> TSeries:
    """``g - (f q + r)`` truncated to ``cap`` (zero when the division is right)."""
    return (g - (f * q + r)).truncate(cap)


def from_poly(p: MPoly, cap: int) -> TSeries:
    return TSeries.from_poly(p, cap)
