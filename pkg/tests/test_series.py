from fractions import Fraction as F
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eisenbox.series import (
    MPoly,
    PuiseuxSeries,
    RGSeries,
    TSeries,
    WeightVector,
    ZeroUpToCap,
    exponents_up_to,
    graded_decompose,
    is_homogeneous,
    make_injective_weights,
    mul,
    nu_omega,
    ord_in,
    phi_substitute,
    rescale_eisenstein,
)

x1, x2 = MPoly.var(2, 0), MPoly.var(2, 1)
x = MPoly.var(1, 0)


def test_ord_in_examples():
    o, init = ord_in(TSeries.from_poly(x**2 + x**3, 5))
    assert o == 2 and init == x**2
    o, init = ord_in(RGSeries(2, F(4), {F(1, 2): F(3), F(1): F(1)}))
    assert o == F(1, 2) and init.terms == {F(1, 2): 3}
    o, init = ord_in(TSeries.from_poly(x1 * x2 + x1**3, 4))
    assert o == 2 and init == x1 * x2


def test_ord_in_zero_up_to_cap_is_distinct():
    with pytest.raises(ZeroUpToCap):
        ord_in(TSeries(1, 4))
    with pytest.raises(ValueError) as err:
        ord_in(MPoly(1))
    assert not isinstance(err.value, ZeroUpToCap)


def test_nu_omega_examples():
    assert nu_omega(x1 + x2**2, (3, 1)) == 2
    assert nu_omega(x1, (1, 1)) == 1
    assert nu_omega(x1**2 * x2, (F(1, 2), 2)) == 3
    with pytest.raises(ValueError):
        nu_omega(MPoly(2), (1, 1))


def test_graded_decompose_examples():
    assert graded_decompose(x1 + x2, (1, 1)) == [(1, x1 + x2)]
    assert graded_decompose(x1 + x2, (1, 2)) == [(1, x1), (2, x2)]
    f = x1**2 + x1 * x2 + x2**3
    assert graded_decompose(f, (1, 1)) == [(2, x1**2 + x1 * x2), (3, x2**3)]


def test_phi_substitute_examples():
    w = WeightVector.checked((1, F(3, 2)), 2)
    assert w.injective_on_cap
    assert phi_substitute(TSeries.from_poly(x1 + x2, 2), w).terms == {F(1): 1, F(3, 2): 1}
    assert phi_substitute(TSeries.from_poly(x1 * x2, 2), w).terms == {F(5, 2): 1}
    wg = make_injective_weights(2, 2)
    img = phi_substitute(TSeries.from_poly((1 + x1) * (1 + x2), 2), wg)
    o1, o2 = wg.omega
    assert set(img.terms) == {0, o1, o2, o1 + o2}
    assert len(img.terms) == 4


def test_phi_requires_certificate():
    with pytest.raises(ValueError):
        phi_substitute(TSeries.from_poly(x1, 2), WeightVector((1, 1), 2, False))
    with pytest.raises(ValueError):
        phi_substitute(TSeries.from_poly(x1, 2), WeightVector.checked((1, 1), 2))


def _exhaustively_injective(w: WeightVector, cap: int) -> bool:
    pts = list(exponents_up_to(w.n, cap))
    vals = [w.weight(a) for a in pts]
    return all(u != v for u, v in combinations(vals, 2))


def test_make_injective_weights_examples():
    assert make_injective_weights(1, 7).omega == (1,)
    w = make_injective_weights(2, 3)
    assert w.omega == (1, F(8, 7))
    assert len(list(exponents_up_to(2, 3))) == 10
    assert _exhaustively_injective(w, 3)
    w3 = make_injective_weights(3, 2)
    assert w3.injective_on_cap and _exhaustively_injective(w3, 2)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 4), st.integers(0, 5))
def test_make_injective_weights_property(n, cap):
    w = make_injective_weights(n, cap)
    assert all(1 <= o <= 2 for o in w.omega)
    assert _exhaustively_injective(w, cap)


def test_rescale_and_mul_examples():
    assert rescale_eisenstein(TSeries.from_poly(1 + x * F(1, 2), 3), 2) == TSeries.from_poly(2 + 2 * x, 3)
    got = rescale_eisenstein(TSeries.from_poly(MPoly.monomial((4,), F(-5, 128)), 6), 4)
    assert got.terms == {(4,): -40}
    assert mul(TSeries.from_poly(1 + x, 1), TSeries.from_poly(1 - x, 1)).terms == {(0,): 1}


def test_puiseux_canonical_ram():
    s = PuiseuxSeries(4, {2: 1, 6: 3}, 8)
    assert s.ram == 2 and s.coeffs == {1: 1, 3: 3} and s.cap == 4
    assert s.exponent_terms() == {F(1, 2): 1, F(3, 2): 3}
    t = PuiseuxSeries.from_terms({F(3, 2): 1}, 3)
    assert t.ram == 2 and t.coeffs == {3: 1}


# -- randomized ring laws --------------------------------------------------


def tseries(nvars, cap):
    keys = st.tuples(*[st.integers(0, cap)] * nvars).filter(lambda e: sum(e) <= cap)
    vals = st.fractions(min_value=-5, max_value=5, max_denominator=6)
    return st.dictionaries(keys, vals, max_size=6).map(lambda d: TSeries(nvars, cap, d))


@st.composite
def three_series(draw):
    n = draw(st.integers(1, 3))
    cap = draw(st.integers(0, 8 if n == 1 else 4))
    return [draw(tseries(n, cap)) for _ in range(3)]


@settings(max_examples=80, deadline=None)
@given(three_series())
def test_ring_axioms(fgh):
    f, g, h = fgh
    assert (f + g) + h == f + (g + h)
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert all(sum(e) <= f.cap for e in (f * g).terms)


def mpolys(nvars):
    keys = st.tuples(*[st.integers(0, 3)] * nvars)
    vals = st.fractions(min_value=-4, max_value=4, max_denominator=5).filter(lambda q: q != 0)
    return st.dictionaries(keys, vals, min_size=1, max_size=5).map(lambda d: MPoly(nvars, d))


weights2 = st.tuples(*[st.fractions(min_value=F(1, 3), max_value=3, max_denominator=7)] * 2)


@settings(max_examples=80, deadline=None)
@given(mpolys(2), mpolys(2), weights2)
def test_nu_omega_multiplicative(f, g, w):
    assert nu_omega(f * g, w) == nu_omega(f, w) + nu_omega(g, w)


@settings(max_examples=80, deadline=None)
@given(mpolys(2), weights2)
def test_graded_decompose_sums_back(f, w):
    parts = graded_decompose(f, w)
    total = MPoly(2)
    for _, p in parts:
        assert is_homogeneous(p, w)
        total = total + p
    assert total == f
    ws = [wt for wt, _ in parts]
    assert ws == sorted(set(ws))


@settings(max_examples=40, deadline=None)
@given(tseries(2, 4), tseries(2, 4))
def test_phi_is_multiplicative(f, g):
    w = make_injective_weights(2, 4)
    lhs = phi_substitute(f * g, w)
    rhs = phi_substitute(f, w) * phi_substitute(g, w)
    # compare on the grid range where both truncations are exact
    cap = min(lhs.cap, rhs.cap)
    assert {s: c for s, c in lhs.terms.items() if s <= cap} == {s: c for s, c in rhs.terms.items() if s <= cap}


@settings(max_examples=100, deadline=None)
@given(tseries(2, 4), st.integers(1, 12))
def test_rescale_integrality_iff(f, a):
    integral = all(c.denominator == 1 for c in rescale_eisenstein(f, a).terms.values())
    direct = all((a ** (sum(e) + 1) * c).denominator == 1 for e, c in f.terms.items())
    assert integral == direct
