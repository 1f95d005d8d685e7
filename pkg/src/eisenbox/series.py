"""Sparse polynomials and truncated series over the rationals.

Exponents are tuples of ints.  Coefficients are ``Fraction``; zero
coefficients are never stored.  Values are treated as immutable: no method
mutates ``terms`` after construction.

Truncation contract: a :class:`TSeries` with ``cap=N`` knows every
coefficient of total degree <= N.  Binary operations return ``cap`` equal to
the smaller operand cap, never more.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence, Union

from .exactnum import Rational, ceil_frac

Exp = tuple[int, ...]
Scalar = Union[int, Fraction]


class ZeroUpToCap(ValueError):
    """The value vanishes through its truncation order; it need not be zero."""


def _frac(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


def _clean(terms: Mapping[Exp, Scalar]) -> dict[Exp, Fraction]:
    return {e: _frac(c) for e, c in terms.items() if c != 0}


def _add_exp(a: Exp, b: Exp) -> Exp:
    return tuple(i + j for i, j in zip(a, b))


def grlex_key(e: Exp):
    """Sort key for graded lexicographic order (descending when reversed)."""
    return (sum(e), e)


class MPoly:
    """Sparse multivariate polynomial with rational coefficients."""

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Exp, Scalar] | None = None):
        if nvars < 0:
            raise ValueError("nvars must be >= 0")
        self.nvars = nvars
        self.terms: dict[Exp, Fraction] = _clean(terms or {})
        for e in self.terms:
            if len(e) != nvars:
                raise ValueError(f"exponent {e} has wrong length for {nvars} variables")
            if min(e, default=0) < 0:
                raise ValueError(f"negative exponent {e}")
        self._hash = None

    @classmethod
    def const(cls, nvars: int, c: Scalar) -> MPoly:
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars: int, i: int) -> MPoly:
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1})

    @classmethod
    def monomial(cls, exp: Sequence[int], c: Scalar = 1) -> MPoly:
        return cls(len(exp), {tuple(exp): c})

    def _coerce(self, other) -> MPoly:
        if isinstance(other, MPoly):
            if other.nvars != self.nvars:
                raise ValueError(f"nvars mismatch: {self.nvars} vs {other.nvars}")
            return other
        if isinstance(other, (int, Fraction)):
            return MPoly.const(self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return MPoly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return MPoly(self.nvars, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[Exp, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = _add_exp(e1, e2)
                out[e] = out.get(e, 0) + c1 * c2
        return MPoly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = MPoly.const(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MPoly.const(self.nvars, other)
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"MPoly({self.nvars}, {self.sorted_terms()})"

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def coeff(self, e: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(e), Fraction(0))

    def sorted_terms(self) -> list[tuple[Exp, Fraction]]:
        """Terms in descending graded lexicographic order."""
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree(self, i: int) -> int:
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    def min_degree(self) -> int:
        if not self.terms:
            raise ValueError("zero polynomial has no order")
        return min(sum(e) for e in self.terms)

    def derivative(self, i: int) -> MPoly:
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                out[tuple(f)] = c * e[i]
        return MPoly(self.nvars, out)

    def content_denominator(self) -> int:
        return math.lcm(*(c.denominator for c in self.terms.values())) if self.terms else 1

    def primitive_integer(self) -> MPoly:
        """Scalar multiple with coprime integer coefficients and positive leading term."""
        if not self.terms:
            return self
        den = self.content_denominator()
        nums = [int(c * den) for c in self.terms.values()]
        g = math.gcd(*nums)
        lead = self.sorted_terms()[0][1]
        scale = Fraction(den, g) * (1 if lead > 0 else -1)
        return self * scale

    def homogeneous_part(self, d: int) -> MPoly:
        return MPoly(self.nvars, {e: c for e, c in self.terms.items() if sum(e) == d})

    def truncate(self, cap: int) -> MPoly:
        return MPoly(self.nvars, {e: c for e, c in self.terms.items() if sum(e) <= cap})

    def substitute(self, i: int, value: MPoly) -> MPoly:
        """Replace variable ``i`` by ``value`` (same variable count)."""
        powers: dict[int, MPoly] = {}
        out = MPoly(self.nvars)
        for e, c in self.terms.items():
            k = e[i]
            if k not in powers:
                powers[k] = value**k
            rest = list(e)
            rest[i] = 0
            out = out + MPoly(self.nvars, {tuple(rest): c}) * powers[k]
        return out

    def evaluate(self, point: Sequence[Scalar]) -> Fraction:
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for xi, k in zip(point, e):
                if k:
                    v *= _frac(xi) ** k
            total += v
        return total

    def embed(self, nvars: int, positions: Sequence[int]) -> MPoly:
        """Re-index into ``nvars`` variables; variable j goes to ``positions[j]``."""
        out = {}
        for e, c in self.terms.items():
            f = [0] * nvars
            for j, k in enumerate(e):
                f[positions[j]] += k
            out[tuple(f)] = c
        return MPoly(nvars, out)

    def divide_exact(self, other: MPoly) -> MPoly | None:
        """Quotient if ``other`` divides ``self`` exactly, else ``None`` (lex division)."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        lead_e = max(other.terms)
        lead_c = other.terms[lead_e]
        rem = dict(self.terms)
        quo: dict[Exp, Fraction] = {}
        while rem:
            e = max(rem)
            if any(a < b for a, b in zip(e, lead_e)):
                return None
            qe = tuple(a - b for a, b in zip(e, lead_e))
            qc = rem[e] / lead_c
            quo[qe] = qc
            for oe, oc in other.terms.items():
                te = _add_exp(qe, oe)
                v = rem.get(te, 0) - qc * oc
                if v:
                    rem[te] = v
                else:
                    rem.pop(te, None)
        return MPoly(self.nvars, quo)


# -- polynomials in a distinguished last variable y ---------------------------


def y_coeffs(P: MPoly) -> list[MPoly]:
    """Coefficients of ``P`` as a polynomial in its last variable."""
    n = P.nvars - 1
    if n < 0:
        raise ValueError("need at least one variable")
    d = max(P.degree(n), 0)
    out = [dict() for _ in range(d + 1)]
    for e, c in P.terms.items():
        out[e[n]][e[:n]] = c
    return [MPoly(n, t) for t in out]


def from_y_coeffs(coeffs: Sequence[MPoly]) -> MPoly:
    n = coeffs[0].nvars
    out = {}
    for j, c in enumerate(coeffs):
        for e, v in c.terms.items():
            out[e + (j,)] = v
    return MPoly(n + 1, out)


# -- truncated series ----------------------------------------------------------


class TSeries:
    """Multivariate power series known through total degree ``cap``."""

    __slots__ = ("nvars", "cap", "terms")

    def __init__(self, nvars: int, cap: int, terms: Mapping[Exp, Scalar] | None = None):
        if cap < 0:
            raise ValueError("cap must be >= 0")
        self.nvars = nvars
        self.cap = cap
        cleaned = _clean(terms or {})
        for e in cleaned:
            if len(e) != nvars:
                raise ValueError(f"exponent {e} has wrong length for {nvars} variables")
        self.terms = {e: c for e, c in cleaned.items() if sum(e) <= cap}

    @classmethod
    def from_poly(cls, p: MPoly, cap: int) -> TSeries:
        return cls(p.nvars, cap, p.terms)

    @classmethod
    def const(cls, nvars: int, cap: int, c: Scalar) -> TSeries:
        return cls(nvars, cap, {(0,) * nvars: c})

    def to_poly(self) -> MPoly:
        return MPoly(self.nvars, self.terms)

    def _check(self, other: TSeries):
        if other.nvars != self.nvars:
            raise ValueError(f"nvars mismatch: {self.nvars} vs {other.nvars}")

    def _lift(self, other):
        if isinstance(other, TSeries):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return TSeries.const(self.nvars, self.cap, other)
        if isinstance(other, MPoly):
            return TSeries.from_poly(other, self.cap)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return TSeries(self.nvars, min(self.cap, other.cap), out)

    __radd__ = __add__

    def __neg__(self):
        return TSeries(self.nvars, self.cap, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return TSeries(self.nvars, self.cap, {e: c * other for e, c in self.terms.items()})
        other = self._lift(other)
        if other is NotImplemented:
            return other
        cap = min(self.cap, other.cap)
        out: dict[Exp, Fraction] = {}
        b_items = sorted(other.terms.items(), key=lambda t: sum(t[0]))
        for e1, c1 in self.terms.items():
            room = cap - sum(e1)
            for e2, c2 in b_items:
                if sum(e2) > room:
                    break
                e = _add_exp(e1, e2)
                out[e] = out.get(e, 0) + c1 * c2
        return TSeries(self.nvars, cap, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = TSeries.const(self.nvars, self.cap, 1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, TSeries):
            return NotImplemented
        return (self.nvars, self.cap, self.terms) == (other.nvars, other.cap, other.terms)

    def __hash__(self):
        return hash((self.nvars, self.cap, frozenset(self.terms.items())))

    def __repr__(self):
        return f"TSeries({self.nvars}, cap={self.cap}, {self.to_poly().sorted_terms()})"

    def is_zero(self) -> bool:
        return not self.terms

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def coeff(self, e: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(e), Fraction(0))

    def truncate(self, cap: int) -> TSeries:
        return TSeries(self.nvars, min(cap, self.cap), self.terms)

    def inverse(self) -> TSeries:
        """Multiplicative inverse; requires a nonzero constant term."""
        c0 = self.constant_term()
        if c0 == 0:
            raise ZeroDivisionError("series with zero constant term is not a unit")
        # Newton iteration on the degree filtration: inv <- inv*(2 - self*inv)
        inv = TSeries.const(self.nvars, 0, 1 / c0)
        prec = 0
        while prec < self.cap:
            prec = min(2 * prec + 1, self.cap)
            s = self.truncate(prec)
            inv = TSeries(self.nvars, prec, inv.terms)
            inv = inv * (2 - s * inv)
        return TSeries(self.nvars, self.cap, inv.terms)

    def derivative(self, i: int) -> TSeries:
        # differentiation loses one degree of accuracy
        p = self.to_poly().derivative(i)
        return TSeries(self.nvars, max(self.cap - 1, 0), p.terms)


def eval_y_poly(P: MPoly, y: TSeries) -> TSeries:
    """Evaluate ``P(x, y)`` (y = last variable of P) at a series ``y``, by Horner."""
    coeffs = y_coeffs(P)
    acc = TSeries(y.nvars, y.cap)
    for c in reversed(coeffs):
        acc = acc * y + TSeries.from_poly(c, y.cap)
    return acc


def rescale_vars(f: TSeries, factors: Sequence[Scalar]) -> TSeries:
    """Monomial rescale ``x_i -> factors[i] * x_i``."""
    if len(factors) != f.nvars:
        raise ValueError(f"nvars mismatch: {len(factors)} factors for {f.nvars} variables")
    out = {}
    for e, c in f.terms.items():
        v = c
        for k, s in zip(e, factors):
            v *= _frac(s) ** k
        out[e] = v
    return TSeries(f.nvars, f.cap, out)


def rescale_eisenstein(f: TSeries, a: int) -> TSeries:
    """``a * f(a*x_1, ..., a*x_n)``: maps the coefficient of x^alpha to a^(|alpha|+1) f_alpha."""
    return rescale_vars(f, [a] * f.nvars) * a


def substitute_univariate(f: TSeries, factors: Sequence[Scalar]) -> TSeries:
    return rescale_vars(f, factors)


def add(f: TSeries, g: TSeries) -> TSeries:
    return f + g


def mul(f: TSeries, g: TSeries) -> TSeries:
    return f * g


def scalar_mul(f: TSeries, c: Scalar) -> TSeries:
    return f * _frac(c)


# -- weights -------------------------------------------------------------------


@dataclass(frozen=True)
class WeightVector:
    """Positive rational weights, optionally certified injective on ``|alpha| <= cap``."""

    omega: tuple[Fraction, ...]
    cap: int = 0
    injective_on_cap: bool = False

    def __post_init__(self):
        object.__setattr__(self, "omega", tuple(_frac(w) for w in self.omega))
        if not self.omega or any(w <= 0 for w in self.omega):
            raise ValueError(f"weights must be positive, got {self.omega}")

    @classmethod
    def checked(cls, omega: Sequence[Rational], cap: int) -> WeightVector:
        """Build and run the exhaustive injectivity check on the degree box."""
        w = tuple(_frac(x) for x in omega)
        return cls(w, cap, weights_injective(w, cap))

    @property
    def n(self) -> int:
        return len(self.omega)

    def weight(self, e: Sequence[int]) -> Fraction:
        return sum((w * k for w, k in zip(self.omega, e)), Fraction(0))

    def denominator(self) -> int:
        return math.lcm(*(w.denominator for w in self.omega))

    def integer_scaled(self) -> tuple[int, ...]:
        d = self.denominator()
        ints = [int(w * d) for w in self.omega]
        g = math.gcd(*ints)
        return tuple(i // g for i in ints)


def _as_omega(w) -> tuple[Fraction, ...]:
    if isinstance(w, WeightVector):
        return w.omega
    return tuple(_frac(x) for x in w)


def exponents_up_to(n: int, cap: int) -> Iterator[Exp]:
    """All exponent vectors in N^n with total degree <= cap."""
    if n == 0:
        yield ()
        return
    for d in range(cap + 1):
        for bars in itertools.combinations(range(d + n - 1), n - 1):
            prev = -1
            e = []
            for b in bars:
                e.append(b - prev - 1)
                prev = b
            e.append(d + n - 2 - prev)
            yield tuple(e)


def weights_injective(omega: Sequence[Fraction], cap: int) -> bool:
    seen = set()
    for e in exponents_up_to(len(omega), cap):
        w = sum((x * k for x, k in zip(omega, e)), Fraction(0))
        if w in seen:
            return False
        seen.add(w)
    return True


def make_injective_weights(n: int, cap: int) -> WeightVector:
    """Weights in [1, 2] separating all monomials of degree <= cap.

    omega_1 = 1 and omega_i = 1 + B**(i-1-n) with B = 2*cap + 1.  The
    fractional parts encode the last n-1 exponents as balanced base-B digits
    and stay below 1/2, so both the degree and the digits are recoverable.
    """
    if n < 1:
        raise ValueError("n must be positive")
    base = 2 * cap + 1
    omega = [Fraction(1)] + [1 + Fraction(1, base ** (n - i)) for i in range(1, n)]
    w = WeightVector.checked(omega, cap)
    if not w.injective_on_cap:
        raise AssertionError(f"weight construction failed for n={n}, cap={cap}")
    return w


def nu_omega(f: MPoly | TSeries, w) -> Fraction:
    """Minimum weighted degree over the support."""
    omega = _as_omega(w)
    if len(omega) != f.nvars:
        raise ValueError("weight length does not match nvars")
    if not f.terms:
        if isinstance(f, TSeries):
            raise ZeroUpToCap("series vanishes through its cap")
        raise ValueError("nu_omega of zero")
    return min(sum((x * k for x, k in zip(omega, e)), Fraction(0)) for e in f.terms)


def graded_decompose(f: MPoly, w) -> list[tuple[Fraction, MPoly]]:
    omega = _as_omega(w)
    parts: dict[Fraction, dict[Exp, Fraction]] = {}
    for e, c in f.terms.items():
        wt = sum((x * k for x, k in zip(omega, e)), Fraction(0))
        parts.setdefault(wt, {})[e] = c
    return [(wt, MPoly(f.nvars, parts[wt])) for wt in sorted(parts)]


def is_homogeneous(f: MPoly, w) -> bool:
    return len(graded_decompose(f, w)) <= 1


def initial_form(f: MPoly, w) -> MPoly:
    """Lowest-weight graded part."""
    parts = graded_decompose(f, w)
    if not parts:
        raise ValueError("initial form of zero")
    return parts[0][1]


# -- ramified univariate series ------------------------------------------------


@dataclass(frozen=True)
class PuiseuxSeries:
    """``sum coeffs[l] * x**(l/ram)``, exact for every exponent <= cap/ram.

    ``ram`` is kept minimal: it is divided by the gcd of itself and every
    index carrying a nonzero coefficient.
    """

    ram: int
    coeffs: Mapping[int, Fraction]
    cap: int

    def __post_init__(self):
        coeffs = {int(k): _frac(v) for k, v in dict(self.coeffs).items() if v != 0}
        ram = self.ram
        if ram < 1:
            raise ValueError("ramification must be positive")
        g = math.gcd(ram, *coeffs.keys()) if coeffs else ram
        cap = self.cap
        if g > 1:
            coeffs = {k // g: v for k, v in coeffs.items()}
            ram //= g
            cap = cap // g
        coeffs = {k: v for k, v in coeffs.items() if k <= cap}
        object.__setattr__(self, "ram", ram)
        object.__setattr__(self, "cap", cap)
        object.__setattr__(self, "coeffs", dict(sorted(coeffs.items())))

    @classmethod
    def from_terms(cls, terms: Mapping[Fraction, Rational], accuracy: Rational) -> PuiseuxSeries:
        """Build from ``{exponent: coeff}`` known for every exponent <= ``accuracy``."""
        dens = [_frac(s).denominator for s in terms] + [_frac(accuracy).denominator]
        ram = math.lcm(*dens)
        coeffs = {int(_frac(s) * ram): c for s, c in terms.items()}
        return cls(ram, coeffs, math.floor(_frac(accuracy) * ram))

    @property
    def lo(self) -> int | None:
        return next(iter(self.coeffs), None)

    @property
    def accuracy(self) -> Fraction:
        return Fraction(self.cap, self.ram)

    def exponent_terms(self) -> dict[Fraction, Fraction]:
        return {Fraction(k, self.ram): v for k, v in self.coeffs.items()}

    def coeff_at(self, s: Rational) -> Fraction:
        s = _frac(s)
        k = s * self.ram
        if k.denominator != 1:
            return Fraction(0)
        return self.coeffs.get(int(k), Fraction(0))

    def is_zero(self) -> bool:
        return not self.coeffs

    def __neg__(self):
        return PuiseuxSeries(self.ram, {k: -v for k, v in self.coeffs.items()}, self.cap)

    def dense(self, count: int | None = None) -> list[Fraction]:
        """Coefficients for indices 0..cap (ram 1 expected for a plain power series)."""
        top = self.cap if count is None else count - 1
        return [self.coeffs.get(k, Fraction(0)) for k in range(top + 1)]

    def truncate(self, accuracy: Rational) -> PuiseuxSeries:
        cap = min(self.cap, math.floor(_frac(accuracy) * self.ram))
        return PuiseuxSeries(self.ram, self.coeffs, cap)


# -- rational-grid series in one variable t -----------------------------------


@dataclass(frozen=True)
class RGSeries:
    """Series in t with exponents in (1/den) N, complete through exponent ``cap``.

    Coefficients are Fractions or MPolys (ground ring), never zero.
    """

    den: int
    cap: Fraction
    terms: Mapping[Fraction, object] = field(default_factory=dict)

    def __post_init__(self):
        cap = _frac(self.cap)
        clean = {}
        for s, c in dict(self.terms).items():
            s = _frac(s)
            if (s * self.den).denominator != 1 or s < 0:
                raise ValueError(f"exponent {s} is not on the 1/{self.den} grid")
            if s <= cap and not _is_zero(c):
                clean[s] = c
        object.__setattr__(self, "cap", cap)
        object.__setattr__(self, "terms", dict(sorted(clean.items())))

    def __add__(self, other: RGSeries) -> RGSeries:
        out = dict(self.terms)
        for s, c in other.terms.items():
            out[s] = out[s] + c if s in out else c
        return RGSeries(math.lcm(self.den, other.den), min(self.cap, other.cap), out)

    def __mul__(self, other):
        if not isinstance(other, RGSeries):
            return RGSeries(self.den, self.cap, {s: c * other for s, c in self.terms.items()})
        cap = min(self.cap, other.cap)
        out: dict[Fraction, object] = {}
        for s1, c1 in self.terms.items():
            for s2, c2 in other.terms.items():
                s = s1 + s2
                if s > cap:
                    break
                out[s] = out[s] + c1 * c2 if s in out else c1 * c2
        return RGSeries(math.lcm(self.den, other.den), cap, out)

    def is_zero(self) -> bool:
        return not self.terms


def _is_zero(c) -> bool:
    if isinstance(c, MPoly):
        return c.is_zero()
    return c == 0


def phi_substitute(h: TSeries, w: WeightVector) -> RGSeries:
    """``h(t^w_1, ..., t^w_n)`` for a certified injective weight vector.

    Every monomial beyond the cap weighs at least ``(cap + 1) * min(w)``, so
    the image is complete through the last grid point below that.
    """
    if not isinstance(w, WeightVector) or not w.injective_on_cap:
        raise ValueError("phi_substitute needs a weight vector certified injective on the cap")
    if w.cap < h.cap:
        raise ValueError(f"weights certified to degree {w.cap}, series has cap {h.cap}")
    if w.n != h.nvars:
        raise ValueError("weight length does not match nvars")
    den = w.denominator()
    cap = Fraction(math.ceil((h.cap + 1) * min(w.omega) * den) - 1, den)
    out: dict[Fraction, Fraction] = {}
    for e, c in h.terms.items():
        s = w.weight(e)
        if s in out:
            raise AssertionError("weight collision despite certificate")
        out[s] = c
    return RGSeries(w.denominator(), cap, out)


def ord_in(f):
    """Order and initial part.

    * ``TSeries``/``MPoly`` -> (lowest total degree, homogeneous form as MPoly)
    * ``RGSeries`` -> (least exponent, single-term RGSeries)
    * ``PuiseuxSeries`` -> (least exponent, single-term PuiseuxSeries)
    """
    if isinstance(f, (TSeries, MPoly)):
        if not f.terms:
            if isinstance(f, TSeries):
                raise ZeroUpToCap(f"series vanishes through degree {f.cap}")
            raise ValueError("ord of zero polynomial")
        d = min(sum(e) for e in f.terms)
        return Fraction(d), MPoly(f.nvars, {e: c for e, c in f.terms.items() if sum(e) == d})
    if isinstance(f, RGSeries):
        if not f.terms:
            raise ZeroUpToCap(f"series vanishes through exponent {f.cap}")
        s = next(iter(f.terms))
        return s, RGSeries(f.den, f.cap, {s: f.terms[s]})
    if isinstance(f, PuiseuxSeries):
        if not f.coeffs:
            raise ZeroUpToCap(f"series vanishes through exponent {f.accuracy}")
        k = f.lo
        return Fraction(k, f.ram), PuiseuxSeries(f.ram, {k: f.coeffs[k]}, f.cap)
    raise TypeError(f"unsupported type {type(f).__name__}")


def ceil_weight(s: Rational) -> int:
    return ceil_frac(s)
