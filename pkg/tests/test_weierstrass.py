import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eisenbox.exactnum import factorize
from eisenbox.frontend import parse_poly
from eisenbox.series import MPoly, TSeries
from eisenbox.weierstrass import RegularityError, divide, prepare, regular_order, residual

from oracles import weierstrass_oracle

X12 = ["x1", "x2"]


def ts(text, cap, names=X12):
    return TSeries.from_poly(parse_poly(text, names), cap)


def test_divide_examples():
    q, r = divide(ts("x2^2", 6), ts("x2^2 - x1", 6))
    assert q.to_poly() == parse_poly("1", X12) and r.to_poly() == parse_poly("x1", X12)
    q, r = divide(ts("x2^3", 6), ts("x2^2 - x1", 6))
    assert q.to_poly() == parse_poly("x2", X12) and r.to_poly() == parse_poly("x1*x2", X12)
    g = ts("3*x1^2 + x1*x2 - 1", 6)
    q, r = divide(g, ts("x2^2 - x1 + x1*x2^3", 6))
    assert q.is_zero() and r == g


def test_prepare_examples():
    f = ts("x2^2 + x1*x2 + x1", 6)
    W, u = prepare(f)
    assert W.to_series(6) == f and u == TSeries.const(2, 6, 1)
    f = ts("(x2^2 - x1)*(1 + x1 + x2)", 6)
    W, u = prepare(f)
    assert W.to_series(6) == ts("x2^2 - x1", 6)
    assert u == ts("1 + x1 + x2", 6)
    f = ts("x2 + x2^2 + x1", 8)
    W, u = prepare(f)
    assert W.d == 1
    assert (W.to_series(8) * u) == f
    assert u.constant_term() != 0


def test_regularity_failure():
    with pytest.raises(RegularityError) as err:
        prepare(ts("x1*x2 + x1^2", 5))
    assert "change of coordinates" in str(err.value)
    with pytest.raises(RegularityError):
        divide(ts("x2", 5), ts("x1", 5))


def _random_poly(rng, n, deg, terms, dens=(1, 2, 3)):
    out = {}
    for _ in range(terms):
        e = [0] * n
        for _ in range(rng.randint(0, deg)):
            e[rng.randrange(n)] += 1
        out[tuple(e)] = F(rng.randint(-4, 4), rng.choice(dens))
    return MPoly(n, out)


def _random_regular(rng, n, d, cap):
    f = _random_poly(rng, n, 3, 4)
    f = MPoly(n, {e: c for e, c in f.terms.items() if any(e[:-1]) or e[-1] > d})
    return f + MPoly.monomial((0,) * (n - 1) + (d,), rng.choice([1, -2, F(1, 3)]))


@pytest.mark.parametrize("seed", range(12))
def test_divide_against_linear_oracle(seed):
    rng = random.Random(seed)
    n = 2 if seed % 3 else 3
    cap = 6 if n == 2 else 4
    d = rng.randint(1, 3)
    f = _random_regular(rng, n, d, cap)
    g = _random_poly(rng, n, 5, 5)
    G, Fs = TSeries.from_poly(g, cap), TSeries.from_poly(f, cap)
    q, r = divide(G, Fs)
    # inputs are read as the exact polynomials kept below the cap
    qo, ro = weierstrass_oracle(G.terms, Fs.terms, n, cap, d)
    assert q.terms == qo and r.terms == ro
    assert residual(TSeries.from_poly(g, cap), TSeries.from_poly(f, cap), q, r, cap).is_zero()
    assert all(e[-1] < d for e in r.terms)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 3))
def test_division_identity_random(seed, d):
    rng = random.Random(seed)
    cap = 7
    f = TSeries.from_poly(_random_regular(rng, 2, d, cap), cap)
    g = TSeries.from_poly(_random_poly(rng, 2, 6, 6), cap)
    q, r = divide(g, f)
    assert residual(g, f, q, r, cap).is_zero()
    assert all(e[-1] < d for e in r.terms)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_prepare_absorbs_units(seed):
    # division can lower total degree, so the product is kept exact (no truncation)
    rng = random.Random(seed)
    f = _random_regular(rng, 2, rng.randint(1, 3), 6)
    unit = _random_poly(rng, 2, 2, 3) * MPoly.var(2, 0) + 1 + MPoly.var(2, 1)
    fu = f * unit
    cap = max(fu.total_degree(), 6)
    W1, u1 = prepare(TSeries.from_poly(f, cap))
    W2, u2 = prepare(TSeries.from_poly(fu, cap))
    assert W1 == W2
    assert W1.to_series(cap) * u1 == TSeries.from_poly(f, cap)


def _support(values):
    primes = set()
    for v in values:
        if F(v).denominator > 1:
            primes |= set(factorize(F(v).denominator).primes)
    return primes


def test_denominator_stability():
    # f, g with denominators supported on {2}: outputs stay 2-adic
    f = ts("x2^2 - 1/2*x1 + 1/4*x1*x2", 8)
    g = ts("x2^5 + 1/8*x1^3 - x1*x2", 8)
    q, r = divide(g, f)
    assert _support(list(q.terms.values()) + list(r.terms.values())) <= {2}
    W, u = prepare(ts("(x2^2 - 1/2*x1)*(1 + 1/4*x2)", 8))
    vals = [c for a in W.coeffs for c in a.terms.values()] + list(u.terms.values())
    assert _support(vals) <= {2}


def test_regular_order():
    assert regular_order(ts("x1 + x2^3 + x2^4", 5)) == 3
