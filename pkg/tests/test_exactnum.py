import math
import threading
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eisenbox.exactnum import (
    PrimeFactorization,
    UnfactoredResidue,
    factorize,
    is_prime,
    lcm_accumulate,
    padic_val,
    radical,
    smooth_numbers,
)


def test_factorize_examples():
    assert factorize(1).factors == ()
    assert factorize(128).as_dict() == {2: 7}
    assert factorize(720).as_dict() == {2: 4, 3: 2, 5: 1}
    assert factorize(720).omega_count == 7


def test_factorize_rejects_nonpositive():
    with pytest.raises(ValueError):
        factorize(0)
    with pytest.raises(ValueError):
        factorize(-4)


@settings(max_examples=300, deadline=None)
@given(st.integers(min_value=1, max_value=10**6))
def test_factorize_reassembles(n):
    fac = factorize(n)
    assert fac.value() == n
    ps = [p for p, _ in fac.factors]
    assert ps == sorted(set(ps))
    assert all(is_prime(p) for p in ps)


def test_large_prime_survivor_is_accepted_when_certified():
    p = 1_000_000_007
    assert factorize(2 * p, cap=10**6).as_dict() == {2: 1, p: 1}


def test_unfactored_residue_is_reported():
    # product of two primes beyond the trial-division reach, too big for the primality test
    p, q = 10**12 + 39, 10**13 + 37
    with pytest.raises(UnfactoredResidue):
        factorize(p * q * 2**100 * 3, cap=10**6)


def test_is_prime_small():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_padic_examples():
    assert padic_val(Fraction(5, 4), 2) == -2
    assert padic_val(0, 3) == math.inf
    assert padic_val(Fraction(7, 256), 2) == -8
    with pytest.raises(ValueError):
        padic_val(Fraction(1, 2), 4)


rats = st.fractions(max_denominator=10**6).filter(lambda q: q != 0)


@given(rats, rats, st.sampled_from([2, 3, 5, 7]))
def test_padic_valuation_laws(a, b, p):
    assert padic_val(a * b, p) == padic_val(a, p) + padic_val(b, p)
    if a + b != 0:
        assert padic_val(a + b, p) >= min(padic_val(a, p), padic_val(b, p))


def test_lcm_examples():
    assert lcm_accumulate([1, 1, 2, 6, 24]) == 24
    assert lcm_accumulate([1]) == 1
    assert lcm_accumulate([4, 6]) == 12
    with pytest.raises(ValueError):
        lcm_accumulate([3, 0])


@given(st.lists(st.integers(min_value=1, max_value=5000), min_size=1, max_size=8))
def test_lcm_is_primewise_max(values):
    want: dict = {}
    for v in values:
        for p, m in factorize(v).factors:
            want[p] = max(want.get(p, 0), m)
    assert factorize(lcm_accumulate(values)).as_dict() == want


def test_radical_and_smooth():
    assert radical(720) == 30
    assert smooth_numbers([2, 3], 10) == [1, 2, 3, 4, 6, 8, 9]


def test_factorization_type_checks():
    with pytest.raises(ValueError):
        PrimeFactorization(((3, 1), (2, 1)))


def test_concurrent_factorization():
    results = {}

    def work(k):
        results[k] = [factorize(n).value() for n in range(2, 4000, k)]

    threads = [threading.Thread(target=work, args=(k,)) for k in (1, 2, 3, 5)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert results[1] == list(range(2, 4000))
