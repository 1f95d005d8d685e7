import math
from fractions import Fraction as F

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from eisenbox.dfinite import (
    DFiniteError,
    LinearODE,
    MissingInitialValues,
    PRecurrence,
    algebraic_to_ode,
    expand,
    ode_to_recurrence,
    padic_profile,
    prime_count_profile,
)
from eisenbox.eisenstein import DenominatorProfile, certify, weakly_eisenstein_check
from eisenbox.exactnum import factorize
from eisenbox.frontend import parse_y_poly
from eisenbox.puiseux import hensel_lift
from eisenbox.series import PuiseuxSeries

from oracles import binom_half, legendre, quadratic_root_coeffs

EXP_REC = PRecurrence(((-1,), (1, 1)), (F(1),))
# holds from l = 1 on; at l = 0 it would force f_1 = 0
LOG_REC = PRecurrence(((0, 1), (1, 1)), (F(0), F(1)), start=1)


def test_expand_examples():
    assert expand(EXP_REC, 5) == [1, 1, F(1, 2), F(1, 6), F(1, 24)]
    assert expand(LOG_REC, 5) == [0, 1, F(-1, 2), F(1, 3), F(-1, 4)]
    assert expand(PRecurrence(((-1,), (1,)), (F(1),)), 6) == [1] * 6


def test_expand_needs_initial_values():
    # p_1 = l - 2 vanishes at l = 2, so f_0..f_3 must be supplied
    with pytest.raises(MissingInitialValues):
        expand(PRecurrence(((1,), (-2, 1)), (F(1),)), 5)


def test_recurrence_checks_initial_values():
    with pytest.raises(DFiniteError):
        PRecurrence(((-1,), (1, 1)), (F(1), F(2)))


def test_algebraic_to_ode_examples():
    assert algebraic_to_ode(parse_y_poly("y^2 - (1+x)")).coeffs == ((-1,), (2, 2))
    assert algebraic_to_ode(parse_y_poly("y - x^2")).coeffs == ((-2,), (0, 1))
    assert algebraic_to_ode(parse_y_poly("y - 3")).coeffs == ((), (1,))


def test_ode_to_recurrence_examples():
    rec = ode_to_recurrence(LinearODE(((-1,), (2, 2))), [1])
    assert rec.coeffs == ((-1, 2), (2, 2))
    assert expand(rec, 3)[2] == F(-1, 8)
    assert ode_to_recurrence(LinearODE(((-1,), (1,))), [1]).coeffs == ((-1,), (1, 1))
    rec = ode_to_recurrence(LinearODE(((), (1,))), [5])
    assert rec.coeffs == ((), (1, 1))
    assert expand(rec, 6) == [5, 0, 0, 0, 0, 0]


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(-3, 3), max_size=3), min_size=2, max_size=3).filter(
    lambda cs: any(cs[-1])), st.lists(st.fractions(max_denominator=5), min_size=12, max_size=12))
def test_recurrence_solutions_solve_the_ode(coeffs, init):
    ode = LinearODE(tuple(tuple(c) for c in coeffs))
    needed = ode_to_recurrence(ode).needed
    assume(needed <= len(init))
    try:
        f = expand(ode_to_recurrence(ode, init[:needed]), 20)
    except (DFiniteError, MissingInitialValues):
        assume(False)
    count = 20 - ode.order - 1
    assert ode.apply(f, count) == [0] * count


ALG_FIXTURES = [
    ("y^2 - (1+x)", {0: 1}),
    ("y^2 + y - x", {}),
    ("(1-x)*y - 1", {0: 1}),
    ("y^3 - y - x", {0: 1}),
]


@pytest.mark.parametrize("text,seed", ALG_FIXTURES)
def test_chain_matches_hensel(text, seed):
    P = parse_y_poly(text)
    N = 200
    want = hensel_lift(P, PuiseuxSeries(1, seed, 0), N).dense()
    ode = algebraic_to_ode(P)
    rec = ode_to_recurrence(ode, want[:8])
    assert expand(rec, N + 1) == want


def test_chain_catalan_oracle():
    P = parse_y_poly("y^2 + y - x")
    rec = ode_to_recurrence(algebraic_to_ode(P), quadratic_root_coeffs(4))
    assert expand(rec, 60) == quadratic_root_coeffs(60)


def test_prime_count_examples():
    exp = expand(EXP_REC, 5)
    assert prime_count_profile(exp).s[4] == 4
    assert set(prime_count_profile([1, -2, 7, 0]).s) == {0}
    log = expand(LOG_REC, 11)
    assert prime_count_profile(log).s[10] == factorize(2520).omega_count == 7


def test_prime_count_exp_legendre():
    coeffs = expand(EXP_REC, 301)
    rep = prime_count_profile(coeffs)
    for l in (10, 97, 300):
        assert rep.s[l] == sum(legendre(l, p) for p in range(2, l + 1) if all(p % q for q in range(2, p)))
    assert list(rep.s) == sorted(rep.s)


def test_padic_examples():
    exp = expand(EXP_REC, 17)
    prof = padic_profile(exp, 2)
    assert [-v for v in prof.valuations] == [legendre(l, 2) for l in range(17)]
    assert prof.slope >= -1
    sq = [binom_half(l) for l in range(40)]
    prof = padic_profile(sq, 2)
    cert = certify(parse_y_poly("y^2 - (1+x)"), PuiseuxSeries(1, {0: 1}, 0), 40)
    assert -2 <= prof.slope and prof.slope >= -cert.lam
    assert padic_profile(sq, 3).slope == 0


def test_algebraic_vs_transcendental_support():
    sq = [binom_half(l) for l in range(101)]
    assert weakly_eisenstein_check(DenominatorProfile.from_coefficients(sq)).is_finite
    exp = expand(EXP_REC, 101)
    assert not weakly_eisenstein_check(DenominatorProfile.from_coefficients(exp)).is_finite


def test_prime_count_vs_divisor_sum():
    # Omega(l!) against sum floor(l/k): both grow like l log l; we only report the ratio
    for l in (50, 200):
        omega = sum(legendre(l, p) for p in range(2, l + 1) if all(p % q for q in range(2, p)))
        divisor_count = sum(l // k for k in range(1, l + 1))
        assert 0 < omega / divisor_count < 1
