"""Independent reference computations used by the tests.

None of these call into eisenbox's algorithms: they use closed forms,
sympy, or brute-force linear algebra.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

import sympy


def binom_half(l: int) -> Fraction:
    """Generalized binomial C(1/2, l)."""
    out = Fraction(1)
    for k in range(l):
        out *= Fraction(1, 2) - k
        out /= k + 1
    return out


def catalan(n: int) -> int:
    return math.comb(2 * n, n) // (n + 1)


def quadratic_root_coeffs(count: int) -> list[Fraction]:
    """Root of y^2 + y - x through 0: sum (-1)^(k+1) C_(k-1) x^k."""
    return [Fraction(0)] + [Fraction((-1) ** (k + 1) * catalan(k - 1)) for k in range(1, count)]


def legendre(n: int, p: int) -> int:
    """v_p(n!) by Legendre's formula."""
    v, q = 0, p
    while q <= n:
        v += n // q
        q *= p
    return v


def sympy_series(expr_text: str, count: int) -> list[Fraction]:
    x = sympy.Symbol("x")
    s = sympy.series(sympy.sympify(expr_text), x, 0, count).removeO()
    poly = sympy.Poly(s, x)
    out = [Fraction(0)] * count
    for (k,), c in poly.terms():
        out[k] = Fraction(int(c.p), int(c.q))
    return out


def sqrt_multi(nvars: int, cap: int) -> dict:
    """Coefficients of sqrt(1 + x_1 + ... + x_n): C(1/2, |a|) * multinomial(a)."""
    out = {}
    for a in itertools.product(range(cap + 1), repeat=nvars):
        k = sum(a)
        if k > cap:
            continue
        multi = math.factorial(k)
        for ai in a:
            multi //= math.factorial(ai)
        out[a] = binom_half(k) * multi
    return out


def gauss_solve(A: list[list[Fraction]], b: list[Fraction]) -> list[Fraction]:
    """Unique solution of a square system by plain Gauss-Jordan elimination."""
    n = len(A)
    M = [list(map(Fraction, row)) + [Fraction(bi)] for row, bi in zip(A, b)]
    for c in range(n):
        piv = next(r for r in range(c, n) if M[r][c] != 0)
        M[c], M[piv] = M[piv], M[c]
        p = M[c][c]
        M[c] = [v / p for v in M[c]]
        nz = [k for k, v in enumerate(M[c]) if v]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c]
                row = M[r]
                for k in nz:
                    row[k] -= f * M[c][k]
    return [M[i][n] for i in range(n)]


def weierstrass_oracle(g: dict, f: dict, n: int, cap: int, d: int):
    """Solve g = f q + r as one linear system over the closed index set.

    For each ``a`` (first n-1 exponents, |a| <= cap) q carries x_n-degrees
    up to ``(cap - |a|) * max(d, 1)`` and r carries degrees below d; the
    equations are the coefficients of x'^a x_n^b for b up to that bound + d.
    """
    boxes = [a for a in itertools.product(range(cap + 1), repeat=n - 1) if sum(a) <= cap]
    bound = {a: (cap - sum(a)) * max(d, 1) for a in boxes}
    unknowns = [("q", a, b) for a in boxes for b in range(bound[a] + 1)]
    unknowns += [("r", a, b) for a in boxes for b in range(d)]
    index = {u: i for i, u in enumerate(unknowns)}
    eqs = [(a, b) for a in boxes for b in range(bound[a] + d + 1)]
    assert len(eqs) == len(unknowns)
    A = [[Fraction(0)] * len(unknowns) for _ in eqs]
    rhs = []
    for row, (a, b) in enumerate(eqs):
        rhs.append(Fraction(g.get(a + (b,), 0)))
        for (fe), fc in f.items():
            c, e = fe[:-1], fe[-1]
            a2 = tuple(x - y for x, y in zip(a, c))
            if min(a2, default=0) < 0 or b - e < 0:
                continue
            key = ("q", a2, b - e)
            if key in index:
                A[row][index[key]] += fc
        if b < d:
            A[row][index[("r", a, b)]] += 1
    sol = gauss_solve(A, rhs)
    q = {u[1] + (u[2],): v for u, v in zip(unknowns, sol) if u[0] == "q" and v and sum(u[1]) + u[2] <= cap}
    r = {u[1] + (u[2],): v for u, v in zip(unknowns, sol) if u[0] == "r" and v and sum(u[1]) + u[2] <= cap}
    return q, r


def det_cofactor(M) -> Fraction:
    """Determinant by Laplace expansion along the first row."""
    n = len(M)
    if n == 1:
        return Fraction(M[0][0])
    total = Fraction(0)
    for j in range(n):
        if M[0][j]:
            minor = [row[:j] + row[j + 1:] for row in M[1:]]
            total += (-1) ** j * Fraction(M[0][j]) * det_cofactor(minor)
    return total


def inverse_gauss(M) -> list[list[Fraction]]:
    n = len(M)
    cols = [gauss_solve(M, [Fraction(int(i == j)) for i in range(n)]) for j in range(n)]
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def primes_upto(n: int) -> list[int]:
    return [p for p in range(2, n + 1) if all(p % q for q in range(2, math.isqrt(p) + 1))]
