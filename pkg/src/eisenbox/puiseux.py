"""Newton-Puiseux expansion and Hensel lifting for P(x, y) in Q[x][y].

Only Q-rational branches are produced.  When a characteristic equation has
no rational root the branch is reported (with the minimal polynomials of
the missing constants) instead of being approximated.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import _lift
from ._sym import irreducible_factors_univariate, is_squarefree_in_last
from .exactnum import factorize
from .series import MPoly, PuiseuxSeries, y_coeffs


class PuiseuxError(ArithmeticError):
    pass


class NotSimpleRoot(PuiseuxError):
    """dP/dy vanishes on the seed: the seed does not isolate a simple root."""


class InsufficientSeed(PuiseuxError):
    pass


class NotSquarefree(PuiseuxError):
    pass


@dataclass(frozen=True)
class ExtensionReport:
    """A branch whose next coefficient lies in a proper extension of Q."""

    prefix: dict  # exponent -> coefficient, the rational part found so far
    exponent: Fraction
    minpolys: tuple  # ascending coefficient lists of irreducible factors of degree >= 2
    degree: int

    def describe(self) -> str:
        return f"extension required (degree {self.degree}) at exponent {self.exponent}"


class ExtensionRequired(PuiseuxError):
    def __init__(self, branches, reports):
        self.branches = branches
        self.reports = reports
        super().__init__("; ".join(r.describe() for r in reports))


def _bivariate(P: MPoly):
    if P.nvars != 2:
        raise ValueError(f"expected a polynomial in x and y, got {P.nvars} variables")
    if P.is_zero():
        raise ValueError("zero polynomial")
    if P.degree(1) < 1:
        raise ValueError("polynomial has no y")


# -- Newton polygon ----------------------------------------------------------


@dataclass(frozen=True)
class Segment:
    start: tuple[int, Fraction]
    end: tuple[int, Fraction]
    slope: Fraction  # x-order of the roots this edge produces (minus the hull slope)
    length: int  # lattice length


@dataclass(frozen=True)
class NewtonPolygon:
    points: tuple[tuple[int, Fraction], ...]
    segments: tuple[Segment, ...]


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _polygon(F: dict) -> NewtonPolygon:
    pts = sorted((j, min(c)) for j, c in F.items() if c)
    hull: list = []
    for p in pts:
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], p) <= 0:
            hull.pop()
        hull.append(p)
    segs = []
    for a, b in zip(hull, hull[1:]):
        dj = b[0] - a[0]
        dv = b[1] - a[1]
        slope = -Fraction(dv) / dj
        # lattice length in the grid generated by the exponents involved
        den = math.lcm(Fraction(a[1]).denominator, Fraction(b[1]).denominator)
        length = math.gcd(dj, int(dv * den))
        segs.append(Segment(a, b, slope, length))
    segs.sort(key=lambda s: s.slope)
    return NewtonPolygon(tuple(pts), tuple(segs))


def _from_mpoly(P: MPoly) -> dict:
    F: dict[int, dict[Fraction, Fraction]] = {}
    for (i, j), c in P.terms.items():
        F.setdefault(j, {})[Fraction(i)] = c
    return F


def newton_polygon(P: MPoly) -> NewtonPolygon:
    """Lower hull of ``{(j, ord_x coeff of y^j)}``; segments sorted by increasing root order."""
    _bivariate(P)
    return _polygon(_from_mpoly(P))


# -- univariate rational roots -------------------------------------------------


def _divisors(n: int) -> list[int]:
    n = abs(n)
    divs = [1]
    for p, m in factorize(n).factors:
        divs = [d * p**k for d in divs for k in range(m + 1)]
    return sorted(divs)


def _horner(coeffs, c):
    acc = Fraction(0)
    for a in reversed(coeffs):
        acc = acc * c + a
    return acc


def _deflate(coeffs, r):
    # synthetic division by (c - r)
    out = [Fraction(0)] * (len(coeffs) - 1)
    acc = Fraction(0)
    for i in range(len(coeffs) - 1, 0, -1):
        acc = acc * r + coeffs[i]
        out[i - 1] = acc
    return out


def rational_roots(coeffs: Sequence[Fraction]) -> tuple[list[tuple[Fraction, int]], list[Fraction]]:
    """Nonzero rational roots with multiplicity, and the leftover cofactor (ascending)."""
    coeffs = [Fraction(c) for c in coeffs]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    while len(coeffs) > 1 and coeffs[0] == 0:
        coeffs = coeffs[1:]
    roots: list[tuple[Fraction, int]] = []
    if len(coeffs) <= 1:
        return roots, coeffs
    den = math.lcm(*(c.denominator for c in coeffs))
    ints = [int(c * den) for c in coeffs]
    cands = set()
    for p in _divisors(ints[0]):
        for q in _divisors(ints[-1]):
            cands.add(Fraction(p, q))
            cands.add(Fraction(-p, q))
    for r in sorted(cands):
        mult = 0
        while len(coeffs) > 1 and _horner(coeffs, r) == 0:
            coeffs = _deflate(coeffs, r)
            mult += 1
        if mult:
            roots.append((r, mult))
    return roots, coeffs


# -- Newton-Puiseux recursion ------------------------------------------------------


def _shift(F: dict, c: Fraction, gamma: Fraction) -> dict:
    """Coefficients of F(x, c x^gamma + y)."""
    d = max(F)
    out: dict[int, dict[Fraction, Fraction]] = {}
    for i, coeff in F.items():
        for j in range(i + 1):
            k = i - j
            scale = math.comb(i, j) * c**k
            shift = gamma * k
            tgt = out.setdefault(j, {})
            for s, v in coeff.items():
                key = s + shift
                tgt[key] = tgt.get(key, 0) + v * scale
    cleaned = {}
    for j in range(d + 1):
        row = {s: v for s, v in out.get(j, {}).items() if v != 0}
        if row:
            cleaned[j] = row
    return cleaned


def _drop_y(F: dict) -> dict:
    return {j - 1: c for j, c in F.items() if j >= 1}


def puiseux_branches(P: MPoly, order) -> tuple[list[PuiseuxSeries], list[ExtensionReport]]:
    """All Q-rational branches accurate through x^order, plus extension reports."""
    _bivariate(P)
    if not is_squarefree_in_last(P):
        raise NotSquarefree("P is not squarefree in y")
    order = Fraction(order)
    branches: list[PuiseuxSeries] = []
    reports: list[ExtensionReport] = []

    def emit(prefix, count=1):
        for _ in range(count):
            branches.append(PuiseuxSeries.from_terms(prefix, order))

    def walk(F, prefix, gamma_min):
        # roots of F with x-order > gamma_min; F(x, y) = P(x, prefix + y)
        if 0 not in F:
            emit(prefix)
            F = _drop_y(F)
            if not F or max(F) == 0:
                return
        poly = _polygon(F)
        for seg in poly.segments:
            g = seg.slope
            if gamma_min is not None and g <= gamma_min:
                continue
            nroots = seg.end[0] - seg.start[0]
            if g > order:
                emit(prefix, nroots)
                continue
            intercept = seg.start[1] + g * seg.start[0]
            j0, j1 = seg.start[0], seg.end[0]
            char = [F.get(j, {}).get(intercept - g * j, Fraction(0)) for j in range(j0, j1 + 1)]
            roots, rest = rational_roots(char)
            for c, _mult in roots:
                walk(_shift(F, c, g), {**prefix, g: c}, g)
            if len(rest) > 1:
                minpolys = tuple(f for f in irreducible_factors_univariate(rest) if len(f) > 2)
                reports.append(ExtensionReport(dict(prefix), g, minpolys, len(rest) - 1))

    walk(_from_mpoly(P), {}, None)
    return branches, reports


def puiseux_expand(P: MPoly, order) -> list[PuiseuxSeries]:
    """Truncated Puiseux roots of P; raises :class:`ExtensionRequired` if some branch leaves Q."""
    branches, reports = puiseux_branches(P, order)
    if reports:
        raise ExtensionRequired(branches, reports)
    return branches


# -- exact residuals ------------------------------------------------------------------


def _series_tpoly(xi: PuiseuxSeries, q: int) -> dict:
    scale = q // xi.ram
    return {k * scale: c for k, c in xi.coeffs.items()}


def _P_on_grid(P: MPoly, q: int) -> list[dict]:
    out = [dict() for _ in range(P.degree(1) + 1)]
    for (i, j), c in P.terms.items():
        out[j][i * q] = c
    return out


def residual_order(P: MPoly, xi: PuiseuxSeries) -> Fraction | float:
    """Exact x-order of P(x, xi) for the finite sum xi; ``inf`` if it vanishes."""
    q = xi.ram
    Q = _P_on_grid(P, q)
    val = _lift.recenter(Q, _series_tpoly(xi, q))[0]
    if not val:
        return math.inf
    return Fraction(min(val), q)


def dy_order(P: MPoly, xi: PuiseuxSeries) -> Fraction | float:
    return residual_order(P.derivative(1), xi)


# -- Hensel / Newton lifting ---------------------------------------------------------


def _mul_trunc(a: list, b: list, n: int) -> list:
    out = [Fraction(0)] * n
    for i, ai in enumerate(a[:n]):
        if ai == 0:
            continue
        lim = n - i
        for j, bj in enumerate(b[:lim]):
            if bj:
                out[i + j] += ai * bj
    return out


def _inv_trunc(b: list, n: int) -> list:
    b0 = b[0]
    inv = [Fraction(0)] * n
    inv[0] = 1 / b0
    for k in range(1, n):
        acc = Fraction(0)
        for i in range(1, min(k, len(b) - 1) + 1):
            if b[i]:
                acc += b[i] * inv[k - i]
        inv[k] = -acc / b0
    return inv


def _eval_dense(coeffs: list[list], xi: list, n: int) -> list:
    acc = [Fraction(0)] * n
    for c in reversed(coeffs):
        acc = _mul_trunc(acc, xi, n)
        for i, v in enumerate(c[:n]):
            acc[i] += v
    return acc


def _order(v: list) -> int | None:
    for i, c in enumerate(v):
        if c:
            return i
    return None


def hensel_lift(P: MPoly, seed: PuiseuxSeries, target) -> PuiseuxSeries:
    """Newton iteration from ``seed`` to a series exact through x^target.

    Needs ``ord P(x, seed) > 2 e`` where ``e = ord dP/dy(x, seed)``; each
    step at least doubles the accuracy (error order m -> 2m - e).
    """
    _bivariate(P)
    q = seed.ram
    T = math.floor(Fraction(target) * q)
    Pd = P.derivative(1)
    e = dy_order(P, seed)
    if e == math.inf:
        raise NotSimpleRoot("dP/dy vanishes at the seed")
    r = residual_order(P, seed)
    if r == math.inf:
        return PuiseuxSeries(q, seed.coeffs, max(T, seed.cap))
    e_t, r_t = int(e * q), int(r * q)
    if r_t <= 2 * e_t:
        raise InsufficientSeed(f"residual order {r} must exceed 2*ord(dP/dy) = {2 * e}")
    if min(seed.coeffs, default=0) < 0:
        raise PuiseuxError("negative exponents are not supported by hensel_lift")
    top = max(T, max(seed.coeffs, default=0)) + 1
    width = top + e_t + 1
    cP = [[Fraction(0)] * width for _ in range(P.degree(1) + 1)]
    for (i, j), c in P.terms.items():
        if i * q < width:
            cP[j][i * q] = c
    cD = [[Fraction(0)] * width for _ in range(Pd.degree(1) + 1)]
    for (i, j), c in Pd.terms.items():
        if i * q < width:
            cD[j][i * q] = c
    xi = [seed.coeffs.get(k, Fraction(0)) for k in range(top)]
    m = r_t - e_t  # xi is exact below index m
    while m <= T:
        goal = min(2 * m - e_t, T + 1)
        n = goal + e_t
        R = _eval_dense(cP, xi, n)
        D = _eval_dense(cD, xi, n)
        if _order(D) != e_t:
            raise NotSimpleRoot("dP/dy changed order during lifting")
        delta = _mul_trunc(R[e_t:], _inv_trunc(D[e_t:], goal), goal)
        for i in range(goal):
            xi[i] -= delta[i]
        m = goal
    return PuiseuxSeries(q, {k: v for k, v in enumerate(xi[: T + 1])}, T)


# -- memoized branch stream ---------------------------------------------------------


class AlgebraicSeries:
    """A root of P pinned by a seed, extended on demand by the grid recursion.

    Coefficients are memoized; extension is serialized internally, so
    concurrent readers see only completed prefixes.
    """

    def __init__(self, P: MPoly, seed: PuiseuxSeries, check_squarefree: bool = True):
        _bivariate(P)
        if check_squarefree and not is_squarefree_in_last(P):
            raise NotSquarefree("P is not squarefree in y")
        self.P = P
        self.seed = seed
        self.ram = seed.ram
        Q = _lift.recenter(_P_on_grid(P, self.ram), _series_tpoly(seed, self.ram))
        if len(Q) < 2 or not Q[1]:
            raise NotSimpleRoot("dP/dy vanishes at the seed")
        if not Q[0]:
            self._exact = True
            self._rec = None
        else:
            self._exact = False
            k0 = max(seed.cap, max(seed.coeffs, default=0)) + 1
            # run on A xi(A t) with integer data: exact for any A, and with the
            # certificate's A every step stays in integers
            Q = _lift.clear_denominators(Q)
            self._A = _lift.growth_base(Q)[3]
            try:
                self._rec = _lift.scaled_recursion(Q, k0, self._A)
            except _lift.LiftError as exc:
                raise InsufficientSeed(str(exc)) from exc
        self._lock = threading.Lock()

    @property
    def e(self) -> Fraction:
        """x-order of dP/dy along the root."""
        Q = _lift.recenter(_P_on_grid(self.P, self.ram), _series_tpoly(self.seed, self.ram))
        return Fraction(min(Q[1]), self.ram)

    def coefficient_table(self, upto: int) -> list[Fraction]:
        """Coefficients of x^(k/ram) for k = 0..upto."""
        base = [self.seed.coeffs.get(k, Fraction(0)) for k in range(upto + 1)]
        if self._exact:
            return base
        xs = self._rec.extend(upto)
        A = self._A
        return [b + Fraction(x) / A ** (k + 1) if x else b for k, (b, x) in enumerate(zip(base, xs))]

    def coefficients(self, count: int) -> list[Fraction]:
        if self.ram != 1:
            raise ValueError("coefficients() needs an unramified branch; use series()")
        return self.coefficient_table(count - 1)

    def series(self, accuracy) -> PuiseuxSeries:
        top = math.floor(Fraction(accuracy) * self.ram)
        return PuiseuxSeries(self.ram, dict(enumerate(self.coefficient_table(top))), top)


def seed_from_poly(seed: MPoly) -> PuiseuxSeries:
    """An unramified seed from a polynomial in x, exact through its degree."""
    coeffs = {e[0]: c for e, c in seed.terms.items()}
    return PuiseuxSeries(1, coeffs, max(coeffs, default=0))


def expand_series(P: MPoly, seed: MPoly | PuiseuxSeries, count: int) -> list[Fraction]:
    """First ``count`` coefficients of the unramified root of P pinned by ``seed``."""
    if isinstance(seed, MPoly):
        seed = seed_from_poly(seed)
    return AlgebraicSeries(P, seed).coefficients(count)
