import threading
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eisenbox.frontend import parse_y_poly
from eisenbox.puiseux import (
    AlgebraicSeries,
    ExtensionRequired,
    InsufficientSeed,
    NotSimpleRoot,
    NotSquarefree,
    expand_series,
    hensel_lift,
    newton_polygon,
    puiseux_branches,
    puiseux_expand,
    rational_roots,
    residual_order,
)
from eisenbox.series import PuiseuxSeries

from oracles import binom_half, quadratic_root_coeffs, sympy_series


def test_newton_polygon_examples():
    assert [s.slope for s in newton_polygon(parse_y_poly("y^2 - x^3")).segments] == [F(3, 2)]
    assert [s.slope for s in newton_polygon(parse_y_poly("y^2 - (1+x)")).segments] == [0]
    poly = newton_polygon(parse_y_poly("y^2 - x*y"))
    assert F(1) in [s.slope for s in poly.segments]
    slopes = [s.slope for s in poly.segments]
    assert slopes == sorted(slopes)


def test_newton_polygon_rejects_zero():
    with pytest.raises(ValueError):
        newton_polygon(parse_y_poly("0*y"))


def _by_sign(branches):
    return sorted(branches, key=lambda b: b.coeffs[b.lo])


def test_cusp_branches():
    bs = _by_sign(puiseux_expand(parse_y_poly("y^2 - x^3"), 10))
    assert [b.exponent_terms() for b in bs] == [{F(3, 2): -1}, {F(3, 2): 1}]
    assert all(b.ram == 2 for b in bs)


def test_node_branches_match_binomial():
    bs = _by_sign(puiseux_expand(parse_y_poly("y^2 - x^2*(1+x)"), 8))
    want = {k + 1: binom_half(k) for k in range(8)}
    for sign, b in zip((-1, 1), bs):
        for k in range(1, 9):
            assert b.coeff_at(k) == sign * want[k]


def test_linear_branch():
    (b,) = puiseux_expand(parse_y_poly("y - x"), 5)
    assert b.exponent_terms() == {F(1): 1}


def test_extension_reported_not_fabricated():
    with pytest.raises(ExtensionRequired) as err:
        puiseux_expand(parse_y_poly("y^2 - 2*x^2"), 6)
    (rep,) = err.value.reports
    assert rep.degree == 2
    assert [F(c) for c in rep.minpolys[0]] == [-2, 0, 1]
    branches, reports = puiseux_branches(parse_y_poly("(y - x)*(y^2 - 2*x^2)"), 6)
    assert len(branches) == 1 and len(reports) == 1


def test_nonsquarefree_rejected():
    with pytest.raises(NotSquarefree):
        puiseux_expand(parse_y_poly("(y - x)^2"), 4)


@pytest.mark.parametrize("text", [
    "y^2 - x^3", "y^2 - x^2*(1+x)", "y^3 - x*y - x^4", "(y - x)*(y + x^2)*(y - 1)",
    "x*y^2 + y - 1", "y^3 - x^2", "y^4 - 2*x^2*y^2 + x^4 - x^5",
])
def test_back_substitution(text):
    P = parse_y_poly(text)
    order = 7
    branches, _ = puiseux_branches(P, order)
    assert branches
    for b in branches:
        assert residual_order(P, b) > order


def test_cube_root_needs_extension_for_conjugates():
    branches, reports = puiseux_branches(parse_y_poly("y^3 - x^2"), 6)
    assert [b.exponent_terms() for b in branches] == [{F(2, 3): 1}]
    assert reports and reports[0].degree == 2


def test_product_reconstruction():
    from eisenbox.series import MPoly, TSeries

    P = parse_y_poly("(y - x)*(y + x^2)*(y - 1 - x)")
    order = 6
    bs = puiseux_expand(P, order)
    assert len(bs) == 3 and all(b.ram == 1 for b in bs)
    # compare prod (t - xi_i) with P(x, t) at a few rational t
    for t in (F(0), F(2), F(-1, 3)):
        prod = TSeries.const(1, order, 1)
        for b in bs:
            factor = {(k,): -c for k, c in b.coeffs.items()}
            factor[(0,)] = t - b.coeffs.get(0, 0)
            prod = prod * TSeries(1, order, factor)
        want = MPoly(1)
        for e, c in P.terms.items():
            want = want + MPoly(1, {(e[0],): c * t ** e[1]})
        assert prod == TSeries.from_poly(want, order)


def test_hensel_examples():
    P = parse_y_poly("y^2 - (1+x)")
    got = hensel_lift(P, PuiseuxSeries(1, {0: 1}, 0), 5)
    assert got.dense() == [binom_half(k) for k in range(6)]
    assert got.dense()[4] == F(-5, 128) and got.dense()[5] == F(7, 256)
    got = hensel_lift(parse_y_poly("y - x^3"), PuiseuxSeries(1, {}, 0), 10)
    assert got.coeffs == {3: 1}
    got = hensel_lift(parse_y_poly("y^2 + y - x"), PuiseuxSeries(1, {}, 0), 4)
    assert got.dense() == [0, 1, -1, 2, -5]


def test_hensel_matches_sympy_and_recursion():
    P = parse_y_poly("y^2 - (1+x)")
    h = hensel_lift(P, PuiseuxSeries(1, {0: 1}, 0), 40).dense()
    assert h[:15] == sympy_series("sqrt(1+x)", 15)
    assert expand_series(P, PuiseuxSeries(1, {0: 1}, 0), 41) == h
    q = hensel_lift(parse_y_poly("y^2 + y - x"), PuiseuxSeries(1, {}, 0), 30).dense()
    assert q == quadratic_root_coeffs(31)


def test_hensel_singular_seed_needs_accuracy():
    # y^2 - x^2(1+x): dP/dy = 2y has order 1; the seed 2x leaves residual order 2 = 2e
    P = parse_y_poly("y^2 - x^2*(1+x)")
    with pytest.raises(InsufficientSeed):
        hensel_lift(P, PuiseuxSeries(1, {1: 2}, 1), 6)
    got = hensel_lift(P, PuiseuxSeries(1, {1: 1, 2: F(1, 2)}, 2), 9)
    assert got.dense() == [0] + [binom_half(k) for k in range(9)]


def test_hensel_rejects_multiple_root():
    with pytest.raises(NotSimpleRoot):
        hensel_lift(parse_y_poly("y^2 - x^3"), PuiseuxSeries(1, {}, 0), 4)


def test_rational_roots():
    roots, rest = rational_roots([F(-2), F(0), F(1)])
    assert roots == [] and rest == [-2, 0, 1]
    roots, rest = rational_roots([F(6), F(-5), F(1)])
    assert sorted(r for r, _ in roots) == [2, 3]


def _residual_after(P, seed, target):
    return residual_order(P, hensel_lift(P, seed, target))


@settings(max_examples=25, deadline=None)
@given(st.integers(-3, 3), st.integers(1, 3), st.integers(2, 20))
def test_newton_doubling_and_residual(a, b, target):
    # y^2 + a*x*y - (1 + b*x): simple root through 1
    P = parse_y_poly(f"y^2 + ({a})*x*y - (1 + {b}*x)")
    xi = hensel_lift(P, PuiseuxSeries(1, {0: 1}, 0), target)
    assert residual_order(P, xi) > target
    # one Newton step from accuracy m reaches 2m - e (e = 0 here)
    step = hensel_lift(P, PuiseuxSeries(1, xi.coeffs, target), 2 * target + 1)
    assert residual_order(P, step) >= 2 * (target + 1)


def test_algebraic_series_concurrent_reads():
    P = parse_y_poly("y^2 - (1+x)")
    s = AlgebraicSeries(P, PuiseuxSeries(1, {0: 1}, 0))
    want = [binom_half(k) for k in range(120)]
    errors = []

    def work(n):
        if s.coefficients(n) != want[:n]:
            errors.append(n)

    ts = [threading.Thread(target=work, args=(n,)) for n in (40, 120, 80, 10, 120)]
    for t in ts:
        t.start()
    for t in ts:
        t.join()
    assert not errors
