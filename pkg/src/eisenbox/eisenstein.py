"""Denominator certificates for algebraic power series, and their verification.

``certify`` works in stages: clear the seed's
denominators, recentre P at the seed, read ``a x^e`` off the initial form of
dP/dy, rescale ``P(x, a z) / (a^2 x^e)``, and turn the smallest positive order
``s_min`` of the rescaled data into the growth rate ``lambda = 1/s_min``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import _lift
from ._sym import is_squarefree_in_last
from .exactnum import ceil_frac, factorize, lcm_accumulate, smooth_numbers
from .puiseux import AlgebraicSeries, InsufficientSeed, NotSimpleRoot, NotSquarefree
from .series import (
    MPoly,
    PuiseuxSeries,
    TSeries,
    eval_y_poly,
    exponents_up_to,
    make_injective_weights,
    phi_substitute,
    rescale_eisenstein,
    y_coeffs,
)

INF = math.inf


class CertificationError(ArithmeticError):
    pass


@dataclass(frozen=True)
class EisensteinCertificate:
    """``a_final**(l+1) * f_l`` is an integer for every ``l <= verified_to``.

    ``c`` is the constant clearing the seed's denominators; ``e`` and
    ``s_min`` are measured in powers of x (of t for a multivariate image).
    """

    a_raw: int
    e: Fraction
    s_min: Fraction | float
    lam: Fraction
    a_final: int
    verified_to: int
    c: int = 1

    def __post_init__(self):
        if self.a_final <= 0:
            raise ValueError("a_final must be positive")
        if self.s_min != INF and self.lam * self.s_min != 1:
            raise ValueError("lambda * s_min must be 1")
        if self.s_min == INF and self.lam != 0:
            raise ValueError("lambda must be 0 when s_min is infinite")


@dataclass(frozen=True)
class VerifyResult:
    """Outcome of an integrality check; ``index`` and ``witness`` locate the first failure."""

    ok: bool
    index: int | tuple | None = None
    witness: Fraction | None = None

    def __bool__(self):
        return self.ok


# -- the certificate core ---------------------------------------------------------------


@dataclass(frozen=True)
class _Core:
    c: int
    a_raw: int
    e: Fraction
    s_min: Fraction | float
    lam: Fraction
    a_final: int
    Q: list  # recentred, integer-cleared grid coefficients
    k0: int


def _certify_grid(P: Sequence[dict], den: int, seed: dict, k0: int) -> _Core:
    """Certificate data for a root of ``P`` on the exponent grid ``(1/den) N``.

    ``P[j]`` maps grid indices to the coefficient of ``t^(k/den) y^j``;
    ``seed`` is the known initial part, exact below grid index ``k0``.
    """
    c = lcm_accumulate([Fraction(v).denominator for v in seed.values()] or [1])
    Q = _lift.recenter(P, seed)
    if len(Q) < 2 or not Q[1]:
        raise NotSimpleRoot("dP/dy vanishes along the seed: the root is not simple")
    # work with integer coefficients; this does not move the root
    Q = _lift.clear_denominators(Q)
    try:
        _lift.GridRecursion(Q, k0, lambda n, d: n / d, Fraction(0))
    except _lift.LiftError as exc:
        if "not a simple root" in str(exc):
            raise NotSimpleRoot(str(exc)) from exc
        raise InsufficientSeed(str(exc)) from exc
    # the rescaled equation z + (unit - 1) z + P(x,0)/(a^2 x^e) + ... = 0
    e_k, s_min, lam, base = _lift.growth_base(Q, den)
    a_raw = Q[1][e_k]
    a_final = c * base
    return _Core(c, a_raw, Fraction(e_k, den), s_min, lam, a_final, Q, k0)


def _check_poly(P: MPoly, nx: int):
    if P.nvars != nx + 1:
        raise ValueError(f"expected {nx} x-variables plus y, got {P.nvars} variables")
    if P.degree(P.nvars - 1) < 1:
        raise ValueError("polynomial has no y")
    if not is_squarefree_in_last(P):
        raise NotSquarefree("P is not squarefree in y")


def _scaled_check(core: _Core, order: int):
    """First ``l <= order`` with ``A**(l+1) f_l`` not integral, or None.

    Runs the recursion for ``Xi(X) = A xi(A X)`` directly, so the work stays
    in integers while the certificate holds.
    """
    rec = _lift.scaled_recursion(core.Q, core.k0, core.a_final)
    for l, v in enumerate(rec.extend(order)):
        if not isinstance(v, int):
            return l, v
    return None


def certify(P: MPoly, seed: PuiseuxSeries, order: int) -> EisensteinCertificate:
    """Certificate for the root of ``P(x, y)`` pinned by an unramified ``seed``.

    The expansion is checked against ``a_final`` through x^order before the
    certificate is returned.
    """
    _check_poly(P, 1)
    if seed.ram != 1:
        raise ValueError("certify needs an unramified seed (ram 1)")
    if min(seed.coeffs, default=0) < 0:
        raise ValueError("seed has negative exponents")
    grid = [dict() for _ in range(P.degree(1) + 1)]
    for (i, j), v in P.terms.items():
        grid[j][i] = v
    k0 = max(seed.cap, max(seed.coeffs, default=0)) + 1
    core = _certify_grid(grid, 1, dict(seed.coeffs), k0)
    bad = _scaled_check(core, order)
    if bad is not None:
        raise CertificationError(
            f"a_final = {core.a_final} fails at l = {bad[0]} (witness {bad[1]})"
        )
    return EisensteinCertificate(
        core.a_raw, core.e, core.s_min, core.lam, core.a_final, order, core.c
    )


# -- verification -----------------------------------------------------------------------


def verify(coeffs: Sequence, a: int) -> VerifyResult:
    """Check ``a**(l+1) * f_l`` is integral for every index; report the first failure."""
    if a < 1:
        raise ValueError("a must be a positive integer")
    p = a
    for l, f in enumerate(coeffs):
        f = Fraction(f)
        if f.denominator != 1:
            # denominator divides a^(l+1)  <=>  p % den == 0
            if p % f.denominator:
                return VerifyResult(False, l, f * p)
        p *= a
    return VerifyResult(True)


def verify_multi(f: TSeries, a: int) -> VerifyResult:
    """Check ``a f(a x_1, ..., a x_n)`` has integer coefficients through the cap."""
    if a < 1:
        raise ValueError("a must be a positive integer")
    g = rescale_eisenstein(f, a)
    bad = [(sum(e), e) for e, v in g.terms.items() if v.denominator != 1]
    if not bad:
        return VerifyResult(True)
    _, e = min(bad)
    return VerifyResult(False, e, g.terms[e])


# -- several variables ----------------------------------------------------------------------


def series_root(P: MPoly, seed, cap: int) -> TSeries:
    """The power series root of ``P(x_1..x_n, y)`` with constant term ``seed``, through ``cap``.

    Newton iteration on truncated series; the seed must be a simple root of
    ``P(0, y)``.
    """
    n = P.nvars - 1
    seed = Fraction(seed)
    Py = P.derivative(n)
    origin = [0] * n
    if P.evaluate(origin + [seed]) != 0:
        raise InsufficientSeed(f"{seed} is not a root of P(0, y)")
    if Py.evaluate(origin + [seed]) == 0:
        raise NotSimpleRoot("dP/dy vanishes at the seed")
    y = TSeries.const(n, cap, seed)
    prec = 1
    while True:
        prec = min(2 * prec, cap + 1)
        step = eval_y_poly(P, y) * eval_y_poly(Py, y).inverse()
        y = y - step
        if prec > cap and step.is_zero():
            return y


def certify_multi(P: MPoly, seed, order: int) -> EisensteinCertificate:
    """Certificate for the root of ``P(x_1..x_n, y)`` through the t-substitution.

    The polynomial is pushed to one variable with weights in [1, 2] that
    separate every monomial of degree <= order; the one-variable certificate
    ``b`` then gives ``a_final = b**2``.
    """
    n = P.nvars - 1
    if n < 1:
        raise ValueError("need at least one x-variable")
    _check_poly(P, n)
    seed = Fraction(seed)
    coeffs = y_coeffs(P)
    wcap = max([order, 1] + [c.total_degree() for c in coeffs if c])
    w = make_injective_weights(n, wcap)
    den = w.denominator()
    grid = []
    for c in coeffs:
        img = phi_substitute(TSeries.from_poly(c, wcap), w)
        grid.append({int(s * den): v for s, v in img.terms.items()})
    core = _certify_grid(grid, den, {0: seed} if seed else {}, 1)
    a_final = core.a_final**2
    f = series_root(P, seed, order)
    res = verify_multi(f, a_final)
    if not res:
        raise CertificationError(
            f"a_final = {a_final} fails at exponent {res.index} (witness {res.witness})"
        )
    return EisensteinCertificate(core.a_raw, core.e, core.s_min, core.lam, a_final, order, core.c)


# -- denominator statistics -------------------------------------------------------------------


@dataclass(frozen=True)
class DenominatorProfile:
    """Reduced denominators ``b_l``, their running lcm, and the prime support."""

    denominators: tuple[int, ...]
    lcms: tuple[int, ...]
    support: frozenset = field(default_factory=frozenset)

    @classmethod
    def from_coefficients(cls, coeffs: Sequence) -> DenominatorProfile:
        dens, lcms, primes = [], [], set()
        run = 1
        for f in coeffs:
            b = Fraction(f).denominator
            dens.append(b)
            if run % b:
                primes.update(factorize(b).primes)
                run = math.lcm(run, b)
            lcms.append(run)
        return cls(tuple(dens), tuple(lcms), frozenset(primes))

    def __len__(self):
        return len(self.denominators)


def search(profile: DenominatorProfile, candidate_bound: int) -> int | None:
    """Smallest ``a <= candidate_bound`` whose powers clear every observed denominator.

    Candidates are the products of primes from the observed support.  A miss
    is evidence only: it says nothing beyond the observed range and bound.
    """
    if not len(profile):
        raise ValueError("empty profile")
    for a in smooth_numbers(sorted(profile.support), candidate_bound):
        p = a
        for b in profile.denominators:
            if p % b:
                break
            p *= a
        else:
            return a
    return None


@dataclass(frozen=True)
class WeakEisensteinReport:
    support: frozenset
    is_finite: bool  # judged on the observed range only
    beta: tuple[int, ...]
    linear_fit: tuple[int, int] | None  # (lambda, mu) with beta(l) <= lambda*l + mu
    growth_points: tuple[int, ...]  # indices where a new prime first appears
    observed: int


def weakly_eisenstein_check(profile: DenominatorProfile) -> WeakEisensteinReport:
    """Prime support, per-index multiplicities and a linear envelope of the denominators.

    ``is_finite`` means no new prime showed up in the second half of the
    observed range; this is a heuristic reading, not a proof.
    """
    seen: set[int] = set()
    growth, beta = [], []
    for l, b in enumerate(profile.denominators):
        fac = factorize(b).as_dict() if b > 1 else {}
        new = set(fac) - seen
        if new:
            growth.append(l)
            seen |= new
        beta.append(max(fac.values(), default=0))
    N = len(beta)
    is_finite = not any(g > N // 2 for g in growth) if N else True
    fit = None
    if is_finite and N:
        mu = beta[0]
        lam = max((ceil_frac(Fraction(beta[l] - mu, l)) for l in range(1, N)), default=0)
        fit = (max(lam, 0), mu)
    return WeakEisensteinReport(frozenset(seen), is_finite, tuple(beta), fit, tuple(growth), N)


def transcendence_evidence(profile: DenominatorProfile, candidate_bound: int) -> dict:
    """Summary of a failed or successful search, labelled as evidence."""
    found = search(profile, candidate_bound)
    report = weakly_eisenstein_check(profile)
    return {
        "label": "evidence",
        "found": found,
        "bound": candidate_bound,
        "observed_to": len(profile) - 1,
        "support": sorted(report.support),
        "support_stable": report.is_finite,
    }
