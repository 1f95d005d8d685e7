"""Order-by-order root recursion on an exponent grid.

Polynomials in t are dicts ``{k: coeff}`` with integer grid exponents (the
real exponent is k/den).  Coefficients only need ``+``, ``*`` and unary
``-``; the linear solve is delegated to a caller-supplied function.
"""

from __future__ import annotations

import threading
from math import comb
from typing import Callable, Sequence


def tpoly_add(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, c in b.items():
        out[k] = out[k] + c if k in out else c
    return {k: c for k, c in out.items() if not _zero(c)}


def tpoly_mul(a: dict, b: dict, cap: int | None = None) -> dict:
    out: dict = {}
    for k1, c1 in a.items():
        for k2, c2 in b.items():
            k = k1 + k2
            if cap is not None and k > cap:
                continue
            p = c1 * c2
            out[k] = out[k] + p if k in out else p
    return {k: c for k, c in out.items() if not _zero(c)}


def tpoly_scale(a: dict, c) -> dict:
    return {k: v * c for k, v in a.items() if not _zero(v * c)}


def _zero(c) -> bool:
    z = getattr(c, "is_zero", None)
    if z is not None:
        return z()
    return c == 0


def recenter(P: Sequence[dict], seed: dict) -> list[dict]:
    """Coefficients in y of ``P(t, seed + y)``; ``P[j]`` is the t-polynomial of y^j."""
    d = len(P) - 1
    seed_pows = [None] * (d + 1)
    if d >= 0:
        one = _one_like(P)
        seed_pows[0] = {0: one}
    for i in range(1, d + 1):
        seed_pows[i] = tpoly_mul(seed_pows[i - 1], seed)
    out = []
    for j in range(d + 1):
        acc: dict = {}
        for i in range(j, d + 1):
            if not P[i]:
                continue
            term = tpoly_mul(P[i], seed_pows[i - j])
            acc = tpoly_add(acc, tpoly_scale(term, comb(i, j)))
        out.append(acc)
    while len(out) > 1 and not out[-1]:
        out.pop()
    return out


def _one_like(P):
    for c in P:
        for v in c.values():
            return v * 0 + 1
    return 1


class LiftError(ArithmeticError):
    """The recursion cannot start: the root is not simple or the seed is too short."""


class GridRecursion:
    """Solve ``Q(t, xi) = 0`` for xi with support in ``[k0, inf)`` term by term.

    ``Q`` is already recentred at the seed.  With ``e`` the t-order of
    dQ/dy(t, 0) and ``lead`` its initial coefficient, the coefficient of
    ``t^(k+e)`` is ``lead * xi_k - (known terms)``, valid once every
    ``j >= 2`` coefficient satisfies ``ord Q_j + (j-1)*k0 > e``.
    Extension is serialized by a lock; completed prefixes are read-only.
    """

    def __init__(self, Q: Sequence[dict], k0: int, solve: Callable, zero):
        if k0 < 1:
            raise LiftError("first unknown exponent must be positive")
        if len(Q) < 2 or not Q[1]:
            raise LiftError("dP/dy vanishes at the seed: not a simple root")
        self.Q = [dict(sorted(q.items())) for q in Q]
        self.e = min(Q[1])
        self.lead = Q[1][self.e]
        self.k0 = k0
        self.solve = solve
        self.zero = zero
        for j in range(2, len(Q)):
            if Q[j] and min(Q[j]) + (j - 1) * k0 <= self.e:
                raise LiftError(
                    f"seed too short: y^{j} coefficient has order {min(Q[j])}, "
                    f"needs > {self.e - (j - 1) * k0}"
                )
        if Q[0] and min(Q[0]) < k0 + self.e:
            raise LiftError(
                f"seed does not pin a root: residual order {min(Q[0])} < {k0 + self.e}"
            )
        self.xi: list = [zero] * k0  # indices < k0 belong to the seed (recentred to 0)
        self.pw: list[list] = [[], []] + [[] for _ in range(2, len(Q))]
        self._lock = threading.Lock()

    @property
    def known(self) -> int:
        """Number of grid indices solved (all indices < known are final)."""
        return len(self.xi)

    def _power(self, j: int, n: int):
        # coefficient n of xi^j, j >= 2
        if n < j * self.k0:
            return self.zero
        table = self.pw[j]
        while len(table) <= n:
            m = len(table)
            if m < j * self.k0:
                table.append(self.zero)
                continue
            acc = self.zero
            for i in range(self.k0, m - (j - 1) * self.k0 + 1):
                xi_i = self.xi[i]
                if _zero(xi_i):
                    continue
                prev = self.xi[m - i] if j == 2 else self._power(j - 1, m - i)
                if not _zero(prev):
                    acc = acc + xi_i * prev
            table.append(acc)
        return table[n]

    def extend(self, upto: int) -> list:
        """Solve every index <= upto and return the coefficient list."""
        with self._lock:
            while len(self.xi) <= upto:
                k = len(self.xi)
                n = k + self.e
                rest = self.Q[0].get(n, self.zero)
                for sigma, c in self.Q[1].items():
                    if sigma == self.e:
                        continue
                    idx = n - sigma
                    if self.k0 <= idx < k:
                        rest = rest + c * self.xi[idx]
                for j in range(2, len(self.Q)):
                    for sigma, c in self.Q[j].items():
                        idx = n - sigma
                        if idx < j * self.k0:
                            break
                        rest = rest + c * self._power(j, idx)
                self.xi.append(self.solve(-rest, self.lead))
            return self.xi[: upto + 1]


# -- integer-scaled recursion -------------------------------------------------------


def clear_denominators(Q: Sequence[dict]) -> list[dict]:
    """Multiply every coefficient by the common denominator (the root is unchanged)."""
    from fractions import Fraction
    from math import lcm

    D = lcm(*[Fraction(v).denominator for q in Q for v in q.values()] or [1])
    return [{k: int(Fraction(v) * D) for k, v in q.items()} for q in Q]


def growth_base(Q: Sequence[dict], den: int = 1):
    """``(e, s_min, lam, base)`` for integer recentred data ``Q``.

    ``base = |lead|**max(ceil(lam), 1)``: the scaled series ``A xi(A t)``
    with ``A = c * base`` has integer coefficients (c clears the seed).
    """
    from fractions import Fraction
    from math import ceil, inf

    e = min(Q[1])
    lead = Q[1][e]
    cand_const = Fraction(min(Q[0]) - e, 2 * den) if Q[0] else inf
    others = [k for k in Q[1] if k != e]
    cand_unit = Fraction(min(others) - e, den) if others else inf
    s_min = min(cand_const, cand_unit)
    lam = Fraction(0) if s_min == inf else 1 / s_min
    return e, s_min, lam, abs(int(lead)) ** max(ceil(lam), 1)


def exact_div(num, lead):
    if isinstance(num, int) and num % lead == 0:
        return num // lead
    from fractions import Fraction

    return Fraction(num, lead)


def scaled_recursion(Q: Sequence[dict], k0: int, A: int) -> GridRecursion:
    """Recursion for ``Xi(t) = A xi(A t)`` on integer data; coefficient k is ``A**(k+1) xi_k``.

    Exact for any positive integer A; a good A keeps every step in integers.
    """
    d = len(Q) - 1
    Qs = [{k: int(v) * A ** (d - j + k) for k, v in q.items()} for j, q in enumerate(Q)]
    return GridRecursion(Qs, k0, exact_div, 0)
