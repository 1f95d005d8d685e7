"""D-finite series and P-recursive sequences.

An algebraic branch satisfies a linear ODE with polynomial coefficients
(found inside ``Q(x)[y]/(P)``), the ODE turns into a recurrence, and the
recurrence produces exact coefficients.  The profiles measure how many
primes the denominators carry.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from sympy import QQ
from sympy.polys.fields import field as frac_field
from sympy.polys.rings import ring

from .exactnum import factorize, padic_val
from .puiseux import NotSimpleRoot
from .series import MPoly


class DFiniteError(ArithmeticError):
    pass


class MissingInitialValues(ValueError):
    """The caller supplied fewer initial values than the recurrence needs."""


def _trim(c: Sequence) -> tuple:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def poly_eval(p: Sequence, t) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * t + c
    return acc


@dataclass(frozen=True)
class LinearODE:
    """``sum_i a_i(x) f^(i)(x) = 0``; ``coeffs[i]`` lists a_i ascending in x (integers)."""

    coeffs: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        cs = tuple(_trim(int(v) for v in a) for a in self.coeffs)
        while len(cs) > 1 and not cs[-1]:
            cs = cs[:-1]
        if not cs or not cs[-1]:
            raise ValueError("leading ODE coefficient is zero")
        object.__setattr__(self, "coeffs", cs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def apply(self, f: Sequence, count: int) -> list[Fraction]:
        """First ``count`` coefficients of ``L f`` for a truncated series ``f``."""
        out = [Fraction(0)] * count
        for i, a in enumerate(self.coeffs):
            for k, ak in enumerate(a):
                if not ak:
                    continue
                for n in range(k, count):
                    m = n - k + i
                    if m < len(f):
                        out[n] += ak * math.perm(m, i) * Fraction(f[m])
        return out


@dataclass(frozen=True)
class PRecurrence:
    """``sum_j p_j(l) f_(l+j) = 0`` for every ``l >= start``.

    ``coeffs[j]`` lists p_j ascending in l (integers).  ``init`` holds
    f_0, f_1, ... and must cover indices below ``n0 + order``, where ``n0``
    is the first l from which p_e never vanishes.
    """

    coeffs: tuple[tuple[int, ...], ...]
    init: tuple[Fraction, ...] = ()
    start: int = 0
    n0: int = field(default=-1)

    def __post_init__(self):
        cs = tuple(_trim(int(v) for v in p) for p in self.coeffs)
        while len(cs) > 1 and not cs[-1]:
            cs = cs[:-1]
        if not cs or not cs[-1]:
            raise ValueError("leading recurrence coefficient is identically zero")
        object.__setattr__(self, "coeffs", cs)
        object.__setattr__(self, "init", tuple(Fraction(v) for v in self.init))
        n0 = max(self.start, 1 + _max_int_root(cs[-1]))
        if self.n0 >= 0:
            if any(poly_eval(cs[-1], l) == 0 for l in range(self.n0, n0)):
                raise DFiniteError(f"leading coefficient vanishes inside l >= {self.n0}")
            n0 = max(self.n0, self.start)
        object.__setattr__(self, "n0", n0)
        e = self.order
        for l in range(self.start, len(self.init) - e):
            if self.residual(self.init, l) != 0:
                raise DFiniteError(f"initial values violate the recurrence at l = {l}")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def needed(self) -> int:
        """Number of initial values the expansion needs."""
        return self.n0 + self.order

    def residual(self, f: Sequence, l: int) -> Fraction:
        # f vanishes at negative indices
        return sum(
            (poly_eval(p, l) * f[l + j] for j, p in enumerate(self.coeffs) if l + j >= 0),
            Fraction(0),
        )

    def with_initial(self, values: Sequence) -> PRecurrence:
        return PRecurrence(self.coeffs, tuple(values), self.start, self.n0)


def _max_int_root(p: Sequence[int]) -> int:
    """Largest integer root of p (``-1`` if none is >= 0)."""
    p = list(p)
    if not any(p):
        raise ValueError("zero polynomial")
    shift = 0
    while p[0] == 0:
        p = p[1:]
        shift += 1
    best = 0 if shift else -1
    c0 = abs(p[0])
    for d in range(1, c0 + 1):
        if c0 % d == 0 and poly_eval(p, d) == 0:
            best = max(best, d)
    return best


def expand(rec: PRecurrence, count: int) -> list[Fraction]:
    """``f_0 .. f_(count-1)``; each new term costs one rational division."""
    if len(rec.init) < min(rec.needed, count):
        raise MissingInitialValues(f"need {rec.needed} initial values, have {len(rec.init)}")
    f = list(rec.init[:count])
    e = rec.order
    lead = rec.coeffs[-1]
    while len(f) < count:
        l = len(f) - e
        pe = poly_eval(lead, l)
        if pe == 0:
            raise DFiniteError(f"leading coefficient vanishes at l = {l}")
        acc = sum((poly_eval(p, l) * f[l + j] for j, p in enumerate(rec.coeffs[:-1])), Fraction(0))
        f.append(-acc / pe)
    return f


# -- algebraic -> ODE ----------------------------------------------------------------------


def _to_ring(P: MPoly, R, X, Y):
    out = R(0)
    for (i, j), c in P.terms.items():
        out += QQ(c.numerator, c.denominator) * X**i * Y**j
    return out


def _solve_over_field(cols: list[list], rhs: list, zero, one):
    """Coefficients c with ``sum c_i cols[i] = rhs``, or None if inconsistent."""
    m = len(rhs)
    n = len(cols)
    rows = [[cols[j][i] for j in range(n)] + [rhs[i]] for i in range(m)]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if rows[i][c] != zero), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = one / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(m):
            if i != r and rows[i][c] != zero:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    if any(rows[i][n] != zero for i in range(r, m)):
        return None
    sol = [zero] * n
    for i, c in enumerate(pivots):
        sol[c] = rows[i][n]
    return sol


def _qq_poly(p) -> list[Fraction]:
    dense = [Fraction(int(c.numerator), int(c.denominator)) for c in reversed(p.to_dense())]
    return dense or [Fraction(0)]


def algebraic_to_ode(P: MPoly, seed=None) -> LinearODE:
    """The least-order linear ODE over Z[x] satisfied by the roots of ``P(x, y)``.

    Derivatives are computed in ``Q(x)[y]/(P)`` using ``f' = -P_x / P_y``;
    the first derivative that depends linearly on the earlier ones over
    ``Q(x)`` gives the equation.  When ``seed`` is given it must be a simple
    root of ``P(0, y)``.
    """
    if P.nvars != 2 or P.degree(1) < 1:
        raise ValueError("expected P(x, y) with positive degree in y")
    if seed is not None:
        s = Fraction(seed)
        if P.evaluate([0, s]) != 0:
            raise NotSimpleRoot(f"{s} is not a root of P(0, y)")
        if P.derivative(1).evaluate([0, s]) == 0:
            raise NotSimpleRoot("dP/dy vanishes at the seed")
    K, X = frac_field("x", QQ)
    R, Y = ring("y", K)
    Pr = _to_ring(P, R, X, Y)
    Py = Pr.diff(Y)
    Px = _to_ring(P.derivative(0), R, X, Y)
    s, _, h = Py.gcdex(Pr)
    if h.degree() > 0:
        raise NotSimpleRoot("P is not squarefree in y")
    inv = s * (K.one / h.LC)
    yprime = (-Px * inv).rem(Pr)
    d = Pr.degree()

    def deriv(E):
        out = R(0)
        for (j,), c in E.terms():
            out += c.diff(X) * Y**j
        return (out + E.diff(Y) * yprime).rem(Pr)

    def vec(E):
        coeffs = dict(E.terms())
        return [coeffs.get((j,), K.zero) for j in range(d)]

    tower = [Y.rem(Pr)]
    while True:
        nxt = deriv(tower[-1])
        sol = _solve_over_field([vec(t) for t in tower], vec(nxt), K.zero, K.one)
        if sol is not None:
            break
        tower.append(nxt)
        if len(tower) > d + 1:
            raise AssertionError("derivative tower did not close")
    ks = [-c for c in sol] + [K.one]
    den = ks[0].denom
    for c in ks[1:]:
        den = den.lcm(c.denom)
    polys = []
    for c in ks:
        q = c * den
        dcon = _qq_poly(q.denom)
        if len(_trim(dcon)) != 1:
            raise AssertionError("denominator did not clear")
        polys.append([v / dcon[0] for v in _qq_poly(q.numer)])
    scale = math.lcm(*(v.denominator for p in polys for v in p))
    ints = [[int(v * scale) for v in p] for p in polys]
    g = math.gcd(*(v for p in ints for v in p))
    ints = [[v // g for v in p] for p in ints]
    if _trim(ints[-1])[-1] < 0:
        ints = [[-v for v in p] for p in ints]
    return LinearODE(tuple(tuple(p) for p in ints))


def _rising(t0: list, i: int) -> list:
    """Coefficients in l of prod_{r<i} (t0 + r) where t0 is a linear poly [c, 1]."""
    out = [1]
    for r in range(i):
        c = t0[0] + r
        nxt = [0] * (len(out) + 1)
        for k, v in enumerate(out):
            nxt[k] += v * c
            nxt[k + 1] += v
        out = nxt
    return out


def ode_to_recurrence(ode: LinearODE, init: Sequence = (), start: int | None = None) -> PRecurrence:
    """Coefficient recurrence of ``ode``; initial values come from the caller.

    With ``s0 = min(0, min(i - k))`` over the terms ``a_ik x^k f^(i)``, the
    coefficient of ``x^(l - s0)`` gives ``p_j(l) = sum a_ik (l - k - s0 + 1)^(rising i)``
    where ``j = i - k - s0``.  The equations start at ``l = s0`` (the x^0
    coefficient) unless a later ``start`` is asked for.
    """
    terms = [(i, k, a) for i, poly in enumerate(ode.coeffs) for k, a in enumerate(poly) if a]
    s0 = min(0, min(i - k for i, k, _ in terms))
    e = max(i - k for i, k, _ in terms) - s0
    ps = [[0] for _ in range(e + 1)]
    for i, k, a in terms:
        j = i - k - s0
        r = _rising([-k - s0 + 1, 1], i)
        p = ps[j]
        if len(p) < len(r):
            p.extend([0] * (len(r) - len(p)))
        for t, v in enumerate(r):
            p[t] += a * v
    start = s0 if start is None else max(start, s0)
    return PRecurrence(tuple(tuple(p) for p in ps), tuple(init), start)


# -- profiles -----------------------------------------------------------------------------------


@dataclass(frozen=True)
class PadicProfile:
    p: int
    valuations: tuple  # int or inf per index
    slope: Fraction  # nu_l >= slope * l + offset on the observed range
    offset: int


def padic_profile(coeffs: Sequence, p: int) -> PadicProfile:
    """Exact p-adic valuations and the steepest linear lower envelope through the start.

    ``offset = min(0, nu_0)`` and ``slope = min(0, min_l (nu_l - offset) / l)``.
    """
    vals = tuple(padic_val(Fraction(c), p) for c in coeffs)
    c0 = vals[0] if vals and vals[0] != math.inf else 0
    c0 = min(0, c0)
    slope = Fraction(0)
    for l, v in enumerate(vals):
        if l == 0 or v == math.inf:
            continue
        slope = min(slope, Fraction(v - c0, l))
    return PadicProfile(p, vals, slope, c0)


@dataclass(frozen=True)
class GrowthReport:
    """``s_l`` = number of prime factors (with multiplicity) of ``lcm(b_0..b_l)``."""

    s: tuple[int, ...]
    ratios: tuple[float, ...]  # s_l / (l ln l), index 0 and 1 are 0.0
    K: float
    K_at: int
    envelopes: dict = field(default_factory=dict)


def prime_count_profile(coeffs: Sequence, primes: Sequence[int] = ()) -> GrowthReport:
    """Prime counts of the running lcm of denominators and the fitted ``K``.

    Only the lcm increments are factored.  ``K = max_{l>=2} s_l/(l ln l)``.
    Envelope slopes are computed for the listed ``primes`` only.
    """
    run, s, omega = 1, [], 0
    for c in coeffs:
        b = Fraction(c).denominator
        if run % b:
            new = math.lcm(run, b)
            omega += factorize(new // run).omega_count
            run = new
        s.append(omega)
    ratios = [0.0, 0.0][: len(s)] + [s[l] / (l * math.log(l)) for l in range(2, len(s))]
    if len(s) > 2:
        K_at = max(range(2, len(s)), key=lambda l: (ratios[l], -l))
        K = ratios[K_at]
    else:
        K_at, K = 0, 0.0
    env = {p: padic_profile(coeffs, p).slope for p in primes}
    return GrowthReport(tuple(s), tuple(ratios), K, K_at, env)
