"""Weighted graded root lifting and support cones.

A root of ``P(x_1..x_n, y)`` is expanded along the grading ``t -> t^w x``:
its weight-l piece is a homogeneous rational function ``a_l / a**E(l)``
with one fixed homogeneous denominator ``a``.  The support cone part maps
the Laurent support of such a series into the positive orthant with the
rank-one monomial map ``alpha -> alpha + lam <w', alpha> beta``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from . import _lift
from ._sym import linear_factor_roots
from .exactnum import ceil_frac
from .puiseux import InsufficientSeed, NotSimpleRoot, PuiseuxError, rational_roots
from .series import (
    MPoly,
    WeightVector,
    graded_decompose,
    is_homogeneous,
    nu_omega,
    y_coeffs,
)


class GradedError(ArithmeticError):
    pass


# -- fractions over a fixed denominator base -------------------------------------


class AFrac:
    """``num / base**m`` with ``base`` a fixed polynomial; kept with minimal m."""

    __slots__ = ("num", "m", "base")

    def __init__(self, num: MPoly, m: int, base: MPoly):
        self.num = num
        self.m = m
        self.base = base
        self._reduce()

    def _reduce(self):
        while self.m > 0:
            if self.num.is_zero():
                self.m = 0
                return
            q = self.num.divide_exact(self.base)
            if q is None:
                return
            self.num = q
            self.m -= 1

    def _lift(self, other) -> AFrac:
        if isinstance(other, AFrac):
            return other
        if isinstance(other, MPoly):
            return AFrac(other, 0, self.base)
        return AFrac(MPoly.const(self.num.nvars, other), 0, self.base)

    def __add__(self, other):
        other = self._lift(other)
        m = max(self.m, other.m)
        num = self.num * self.base ** (m - self.m) + other.num * self.base ** (m - other.m)
        return AFrac(num, m, self.base)

    __radd__ = __add__

    def __neg__(self):
        return AFrac(-self.num, self.m, self.base)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __mul__(self, other):
        other = self._lift(other)
        return AFrac(self.num * other.num, self.m + other.m, self.base)

    __rmul__ = __mul__

    def div_base(self) -> AFrac:
        return AFrac(self.num, self.m + 1, self.base)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __repr__(self):
        return f"AFrac({self.num!r} / base^{self.m})"


# -- graded series ----------------------------------------------------------------------


@dataclass(frozen=True)
class GradedSeries:
    """``sum_l pieces[l] / a**(ceil(l - lo) + 1)``, complete through weight ``cap``.

    Pieces live in ``Q[x_1..x_n]``; with ``ram = q > 1`` every ``x_i`` stands
    for ``x_i^(1/q)`` and the true weight of a piece is ``l / q``.
    """

    omega: WeightVector
    lo: Fraction
    a: MPoly
    pieces: Mapping[Fraction, MPoly]
    cap: Fraction
    ram: int = 1

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "cap", Fraction(self.cap))
        object.__setattr__(
            self,
            "pieces",
            {Fraction(l): p for l, p in sorted(self.pieces.items()) if not p.is_zero()},
        )
        if not is_homogeneous(self.a, self.omega):
            raise AssertionError("denominator base is not weighted homogeneous")

    @property
    def nvars(self) -> int:
        return self.a.nvars

    def exponent(self, l) -> int:
        """Power of ``a`` dividing the weight-l piece."""
        return ceil_frac(Fraction(l) - self.lo) + 1

    def piece(self, l) -> tuple[MPoly, int]:
        l = Fraction(l)
        return self.pieces.get(l, MPoly(self.nvars)), self.exponent(l)

    def check_law(self) -> bool:
        """Each piece is homogeneous and ``nu(a_l) - E(l) nu(a) = l``."""
        nu_a = nu_omega(self.a, self.omega)
        for l, p in self.pieces.items():
            if not is_homogeneous(p, self.omega):
                return False
            if nu_omega(p, self.omega) - self.exponent(l) * nu_a != l:
                return False
        return True

    def true_weight(self, l) -> Fraction:
        return Fraction(l) / self.ram


def _graded_grid(P: MPoly, w: WeightVector) -> tuple[list[dict], int]:
    """``P(t^w x, y)`` as y-coefficients ``{grid index: homogeneous MPoly}``."""
    n = P.nvars - 1
    den = w.denominator()
    rows = []
    for cj in y_coeffs(P):
        cj = MPoly(n, {e[:n]: v for e, v in cj.terms.items()})
        rows.append({int(s * den): part for s, part in graded_decompose(cj, w)})
    return rows, den


def _seed_grid(seed: MPoly, w: WeightVector, den: int) -> dict:
    return {int(s * den): part for s, part in graded_decompose(seed, w)}


def _choose_power(fracs: dict, lo: int, den: int) -> int:
    """Smallest k >= 1 with ``m(l) <= k (ceil(l - lo) + 1)`` for every piece."""
    k = 1
    for idx, f in fracs.items():
        slots = ceil_frac(Fraction(idx - lo, den)) + 1
        k = max(k, ceil_frac(Fraction(f.m, slots)))
    return k


def _assemble(w, den, fracs: dict, a_raw: MPoly, cap, ram=1) -> GradedSeries:
    fracs = {k: f for k, f in fracs.items() if not f.is_zero()}
    n = a_raw.nvars
    if not fracs:
        return GradedSeries(w, Fraction(0), MPoly.const(n, 1), {}, cap, ram)
    lo = min(fracs)
    k = _choose_power(fracs, lo, den)
    pieces = {}
    for idx, f in fracs.items():
        slots = ceil_frac(Fraction(idx - lo, den)) + 1
        pieces[Fraction(idx, den)] = f.num * a_raw ** (k * slots - f.m)
    return GradedSeries(w, Fraction(lo, den), a_raw**k, pieces, cap, ram)


def _lift_fracs(P: MPoly, w: WeightVector, seed: MPoly, seed_weight, cap):
    """Grid recursion over ``Q[x]`` fractions; returns (fractions by index, a_raw, den)."""
    n = P.nvars - 1
    rows, den = _graded_grid(P, w)
    sg = _seed_grid(seed, w, den)
    Q = _lift.recenter(rows, sg)
    if len(Q) < 2 or not Q[1]:
        raise NotSimpleRoot("dP/dy vanishes along the seed")
    e = min(Q[1])
    a_raw = Q[1][e]
    if seed_weight is None:
        seed_weight = max((Fraction(k, den) for k in sg), default=Fraction(0))
    k0 = math.floor(Fraction(seed_weight) * den) + 1
    top = math.floor(Fraction(cap) * den)
    fracs = {k: AFrac(v, 0, a_raw) for k, v in sg.items()}
    if Q[0]:
        AQ = [{k: AFrac(v, 0, a_raw) for k, v in q.items()} for q in Q]
        zero = AFrac(MPoly(n), 0, a_raw)
        try:
            rec = _lift.GridRecursion(AQ, k0, lambda num, lead: num.div_base(), zero)
        except _lift.LiftError as exc:
            raise InsufficientSeed(str(exc)) from exc
        if rec.lead.m != 0 or rec.lead.num != a_raw:
            raise AssertionError("unexpected leading coefficient")
        for k, v in enumerate(rec.extend(top)):
            if k >= k0 and not v.is_zero():
                fracs[k] = fracs[k] + v if k in fracs else v
    if not is_homogeneous(a_raw, w):
        raise AssertionError("initial form is not homogeneous")
    return fracs, a_raw, den


def graded_root_lift(P: MPoly, w: WeightVector, seed: MPoly | None = None, cap=8,
                     seed_weight=None) -> GradedSeries:
    """Graded pieces through weight ``cap`` of the root pinned by ``seed``.

    ``seed`` is a polynomial in x_1..x_n whose graded parts are trusted up to
    ``seed_weight`` (default: its top weight, or 0 for a constant seed).
    The denominator base is ``a_raw**k`` where ``a_raw`` is the weighted
    initial form of dP/dy at the recentred seed and k is the least power
    that fits every piece under the ``ceil(l - l0) + 1`` law.
    """
    n = P.nvars - 1
    if n < 1 or w.n != n:
        raise ValueError("weight vector length must equal the number of x-variables")
    if P.degree(n) < 1:
        raise ValueError("polynomial has no y")
    seed = seed if seed is not None else MPoly(n)
    fracs, a_raw, den = _lift_fracs(P, w, seed, seed_weight, cap)
    return _assemble(w, den, fracs, a_raw, Fraction(cap))


def residual_weight(P: MPoly, g: GradedSeries, upto=None) -> Fraction | float:
    """``nu_w P(x, partial sum through weight upto)`` (inf if it vanishes)."""
    n = g.nvars
    upto = g.cap if upto is None else Fraction(upto)
    top = max((g.exponent(l) for l in g.pieces if l <= upto), default=0)
    # S = sum_l a_l a^(top - E(l)) / a^top
    num = MPoly(n)
    for l, p in g.pieces.items():
        if l <= upto:
            num = num + p * g.a ** (top - g.exponent(l))
    d = len(y_coeffs(P)) - 1
    acc = MPoly(n)
    for j, cj in enumerate(y_coeffs(P)):
        cj = MPoly(n, {e[:n]: v for e, v in cj.terms.items()})
        acc = acc + cj * num**j * g.a ** (top * (d - j))
    if acc.is_zero():
        return math.inf
    return nu_omega(acc, g.omega) - top * d * nu_omega(g.a, g.omega)


# -- ramified version ---------------------------------------------------------------------


def _power_substitute(P: MPoly, q: int) -> MPoly:
    n = P.nvars - 1
    return MPoly(P.nvars, {tuple(k * q for k in e[:n]) + (e[n],): v for e, v in P.terms.items()})


def graded_puiseux(P: MPoly, w: WeightVector, q: int, cap) -> list[GradedSeries]:
    """Graded roots of ``P(x_1^q, .., x_n^q, y)``, read with ``x_i -> x_i^(1/q)``.

    Each branch starts at a simple root of the characteristic equation of a
    t-Newton polygon edge.  Only initial coefficients that are polynomials in
    x are supported; anything else is reported as an error.  ``q`` is given,
    not detected.
    """
    if q < 1:
        raise ValueError("q must be a positive integer")
    n = P.nvars - 1
    Pq = _power_substitute(P, q)
    rows, den = _graded_grid(Pq, w)
    capq = Fraction(cap) * q
    out: list[GradedSeries] = []
    if not rows[0]:
        # y divides P: the zero branch
        out.append(GradedSeries(w, Fraction(0), MPoly.const(n, 1), {}, capq, q))
    pts = [(j, min(r)) for j, r in enumerate(rows) if r]
    hull: list = []
    for p in pts:
        while len(hull) >= 2 and (
            (hull[-1][0] - hull[-2][0]) * (p[1] - hull[-2][1])
            - (hull[-1][1] - hull[-2][1]) * (p[0] - hull[-2][0])
        ) <= 0:
            hull.pop()
        hull.append(p)
    for (j0, v0), (j1, v1) in zip(hull, hull[1:]):
        gamma = Fraction(v0 - v1, j1 - j0)
        if gamma.denominator != 1:
            raise PuiseuxError(f"edge needs ramification in t (slope {gamma}); try a larger q")
        gamma = int(gamma)
        inter = v0 + gamma * j0
        char = [rows[j].get(inter - gamma * j, MPoly(n)) for j in range(j0, j1 + 1)]
        roots, others = linear_factor_roots(char)
        if others:
            raise PuiseuxError(f"initial coefficient needs an extension: {others}")
        for num, dnm, mult in roots:
            if mult > 1:
                raise PuiseuxError("repeated initial coefficient; refine the seed by hand")
            c = num.divide_exact(dnm)
            if c is None:
                raise PuiseuxError(f"initial coefficient {num}/{dnm} is not a polynomial")
            if c.is_zero():
                continue
            seed = c * _t_marker(n, w, gamma, den, c)
            fracs, a_raw, _ = _lift_fracs(Pq, w, seed, Fraction(gamma, den), capq)
            out.append(_assemble(w, den, fracs, a_raw, capq, q))
    return out


def _t_marker(n, w, gamma, den, c):
    # the seed is c(x) t^gamma with c homogeneous of weight gamma/den after the substitution;
    # when c has a different weight the t-power is carried by a constant factor of 1
    if not is_homogeneous(c, w):
        raise PuiseuxError("initial coefficient is not weighted homogeneous")
    if nu_omega(c, w) * den != gamma:
        raise PuiseuxError("initial coefficient weight does not match the edge slope")
    return 1


# -- monomial maps ------------------------------------------------------------------------


def _det(rows: list[list[Fraction]]) -> Fraction:
    m = [list(map(Fraction, r)) for r in rows]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            if f:
                for k in range(c, n):
                    m[r][k] -= f * m[c][k]
    return det


def _inverse(rows: list[list[Fraction]]) -> list[list[Fraction]]:
    """Gauss-Jordan inverse over Q."""
    n = len(rows)
    m = [list(map(Fraction, r)) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(rows)]
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        m[c], m[piv] = m[piv], m[c]
        p = m[c][c]
        m[c] = [v / p for v in m[c]]
        for r in range(n):
            if r != c and m[r][c]:
                f = m[r][c]
                m[r] = [a - f * b for a, b in zip(m[r], m[c])]
    return [r[n:] for r in m]


def _matmul(A, B):
    return [[sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in zip(*B)] for row in A]


@dataclass(frozen=True)
class MonomialMap:
    """``x^alpha -> x^(alpha M)`` with ``M = I + lam * omega beta^T``.

    Exponent vectors act as rows: ``alpha M = alpha + lam <omega, alpha> beta``,
    which is the substitution ``x_i -> x_i * x^(lam * omega_i * beta)``.
    """

    lam: Fraction
    omega: tuple[int, ...]
    beta: tuple[int, ...]
    matrix: tuple[tuple[Fraction, ...], ...] = field(init=False)

    def __post_init__(self):
        n = len(self.omega)
        if len(self.beta) != n:
            raise ValueError("omega and beta lengths differ")
        object.__setattr__(self, "lam", Fraction(self.lam))
        M = tuple(
            tuple(Fraction(int(i == j)) + self.lam * self.omega[i] * self.beta[j] for j in range(n))
            for i in range(n)
        )
        object.__setattr__(self, "matrix", M)

    @property
    def n(self) -> int:
        return len(self.omega)

    def chi(self) -> Fraction:
        return 1 + self.lam * sum(o * b for o, b in zip(self.omega, self.beta))

    def det(self) -> Fraction:
        return _det([list(r) for r in self.matrix])

    def inverse(self) -> tuple[tuple[Fraction, ...], ...]:
        """Rank-one closed form ``I - lam omega beta^T / chi``."""
        chi = self.chi()
        if chi == 0:
            raise ZeroDivisionError("chi(lambda) = 0: the map is not invertible")
        n = self.n
        return tuple(
            tuple(Fraction(int(i == j)) - self.lam * self.omega[i] * self.beta[j] / chi for j in range(n))
            for i in range(n)
        )

    def apply(self, alpha: Sequence) -> tuple:
        s = self.lam * sum(o * a for o, a in zip(self.omega, alpha))
        return tuple(Fraction(a) + s * b for a, b in zip(alpha, self.beta))

    def apply_poly(self, f: Mapping) -> dict:
        """Image of a Laurent polynomial given as ``{exponent: coeff}``."""
        out = {}
        for e, c in f.items():
            img = self.apply(e)
            if any(v.denominator != 1 for v in img):
                raise ValueError("image exponent is not integral")
            out[tuple(int(v) for v in img)] = c
        return out


def psi_lambda(lam, w: WeightVector | Sequence, beta: Sequence[int]) -> MonomialMap:
    """The map ``x_i -> x_i x^(lam w_i beta)`` for the integer-scaled weights."""
    if isinstance(w, WeightVector):
        omega = w.integer_scaled()
    else:
        omega = tuple(int(v) for v in w)
    if any(b < 0 for b in beta):
        raise ValueError("beta must be a nonnegative exponent")
    m = MonomialMap(Fraction(lam), omega, tuple(int(b) for b in beta))
    if m.chi() == 0:
        raise ZeroDivisionError("chi(lambda) = 0")
    return m


# -- exact linear programming -------------------------------------------------------------


def feasible(A: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """A point ``x >= 0`` with ``A x = b`` (exact phase-one simplex, Bland's rule), or None."""
    m = len(A)
    n = len(A[0]) if m else 0
    rows = []
    for i in range(m):
        r = [Fraction(v) for v in A[i]]
        bi = Fraction(b[i])
        if bi < 0:
            r = [-v for v in r]
            bi = -bi
        rows.append(r + [Fraction(int(i == k)) for k in range(m)] + [bi])
    basis = [n + i for i in range(m)]
    width = n + m
    # objective: minimize the sum of artificials -> reduced costs
    while True:
        # reduced costs of the phase-one objective (sum of artificials)
        cost = [Fraction(int(k >= n)) for k in range(width)]
        for i in range(m):
            if basis[i] >= n:
                for k in range(width):
                    cost[k] -= rows[i][k]
        enter = next((k for k in range(width) if cost[k] < 0 and k not in basis), None)
        if enter is None:
            break
        best = None
        for i in range(m):
            if rows[i][enter] > 0:
                ratio = rows[i][-1] / rows[i][enter]
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            break
        i = best[1]
        p = rows[i][enter]
        rows[i] = [v / p for v in rows[i]]
        for r in range(m):
            if r != i and rows[r][enter]:
                f = rows[r][enter]
                rows[r] = [a - f * c for a, c in zip(rows[r], rows[i])]
        basis[i] = enter
    x = [Fraction(0)] * width
    for i, bv in enumerate(basis):
        x[bv] = rows[i][-1]
    if any(x[n + i] != 0 for i in range(m)):
        return None
    return x[:n]


@dataclass(frozen=True)
class Cone:
    """``translate + cone(generators)`` with integer data."""

    generators: tuple[tuple[int, ...], ...]
    translate: tuple[int, ...]

    def __post_init__(self):
        gens = tuple(tuple(int(v) for v in g) for g in self.generators if any(g))
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "translate", tuple(int(v) for v in self.translate))

    @property
    def n(self) -> int:
        return len(self.translate)

    def contains(self, point: Sequence) -> bool:
        v = [Fraction(p) - g for p, g in zip(point, self.translate)]
        if not self.generators:
            return all(c == 0 for c in v)
        A = [[g[i] for g in self.generators] for i in range(self.n)]
        return feasible(A, v) is not None

    def is_strongly_convex(self) -> bool:
        """No line inside: no nonneg combination with weights summing to 1 vanishes."""
        if not self.generators:
            return True
        A = [[g[i] for g in self.generators] for i in range(self.n)]
        A.append([1] * len(self.generators))
        return feasible(A, [0] * self.n + [1]) is None


def _primitive(row: Sequence[Fraction]) -> tuple[int, ...]:
    den = math.lcm(*(Fraction(v).denominator for v in row))
    ints = [int(Fraction(v) * den) for v in row]
    g = math.gcd(*ints) or 1
    return tuple(i // g for i in ints)


# -- Laurent support -------------------------------------------------------------------


def _initial_monomial(a: MPoly, direction: Sequence[Fraction]) -> tuple[tuple[int, ...], Fraction]:
    parts = graded_decompose(a, direction)
    low = parts[0][1]
    if len(low.terms) != 1:
        raise GradedError(
            "the denominator has no unique initial monomial for this direction; "
            "perturb the weights (e.g. make one variable strictly heavier)"
        )
    (beta, c), = low.terms.items()
    return beta, c


def laurent_support(g: GradedSeries, direction: Sequence, depth: int) -> dict:
    """Laurent expansion ``{exponent: coeff}`` of ``g`` with ``1/a`` expanded in ``direction``.

    ``1/a = x^(-beta)/c * sum_k (-u)^k`` with ``u = a/(c x^beta) - 1``, kept for
    ``k <= depth``.
    """
    direction = tuple(Fraction(v) for v in direction)
    if len(direction) != g.nvars or any(v <= 0 for v in direction):
        raise ValueError("direction needs one positive weight per variable")
    beta, c = _initial_monomial(g.a, direction)
    u = {
        tuple(x - b for x, b in zip(e, beta)): v / c
        for e, v in g.a.terms.items()
        if e != beta
    }

    def lmul(p, q):
        out = {}
        for e1, c1 in p.items():
            for e2, c2 in q.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return {e: v for e, v in out.items() if v != 0}

    total: dict = {}
    for l, p in g.pieces.items():
        E = g.exponent(l)
        # (1 + u)^(-E) = sum_k binom(-E, k) u^k
        series = {tuple([0] * g.nvars): Fraction(1)}
        upow = {tuple([0] * g.nvars): Fraction(1)}
        for k in range(1, depth + 1):
            upow = lmul(upow, u)
            if not upow:
                break
            coef = Fraction(math.comb(E + k - 1, k) * (-1) ** k)
            for e, v in upow.items():
                series[e] = series.get(e, 0) + coef * v
        shift = {tuple(-E * b for b in beta): Fraction(1) / c**E}
        term = lmul(lmul(dict(p.terms), shift), series)
        for e, v in term.items():
            total[e] = total.get(e, 0) + v
    return {e: v for e, v in total.items() if v != 0}


def support_cone(g: GradedSeries, direction: Sequence, depth: int = 12) -> tuple[Cone, Fraction | None]:
    """A strongly convex rational cone, translated, containing the truncated support.

    Returns ``(cone, lam)``.  ``lam`` is the least natural number with every
    ``psi_lam(alpha) >= 0``; the cone is then spanned by the rows of the
    inverse matrix and the translate is 0.  When no such lam exists the
    fallback is the translate ``min(support)`` with the coordinate directions
    along which the support actually moves (``lam`` is None).
    """
    S = list(laurent_support(g, direction, depth))
    n = g.nvars
    if not S:
        return Cone((), (0,) * n), Fraction(0)
    wv = WeightVector(tuple(Fraction(v) for v in direction))
    wi = wv.integer_scaled()
    beta, _ = _initial_monomial(g.a, wv.omega)
    lam = 0
    ok = True
    for alpha in S:
        s = sum(o * a for o, a in zip(wi, alpha))
        for ai, bi in zip(alpha, beta):
            if ai >= 0:
                continue
            if bi == 0 or s <= 0:
                ok = False
                break
            lam = max(lam, ceil_frac(Fraction(-ai, s * bi)))
        if not ok:
            break
    if ok:
        psi = psi_lambda(lam, wi, beta)
        gens = tuple(_primitive(r) for r in psi.inverse())
        cone = Cone(gens, (0,) * n)
        return cone, Fraction(lam)
    gamma = tuple(min(a[i] for a in S) for i in range(n))
    gens = tuple(
        tuple(int(i == k) for k in range(n)) for i in range(n) if any(a[i] > gamma[i] for a in S)
    )
    return Cone(gens, gamma), None


def completion_norm(f: MPoly, g: MPoly, w: WeightVector | Sequence | None = None) -> Fraction:
    """Exponent of the norm ``|f/g| = exp(-result)``: an order (or weighted order) difference."""
    if f.is_zero() or g.is_zero():
        raise ValueError("completion_norm of zero")
    if w is None:
        return Fraction(f.min_degree() - g.min_degree())
    return nu_omega(f, w) - nu_omega(g, w)


def direction_from_order(order: Sequence[int], n: int) -> tuple[int, ...]:
    """Weights making ``x_order[0]`` lightest, then ``x_order[1]``, ...: a Laurent direction."""
    if sorted(order) != list(range(n)):
        raise ValueError("order must be a permutation of the variable indices")
    out = [0] * n
    for rank, i in enumerate(order):
        out[i] = rank + 1
    return tuple(out)
