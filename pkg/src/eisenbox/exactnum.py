"""Integer and rational kernel: factorization, p-adic valuations, lcm.

``int`` and :class:`fractions.Fraction` are the ground scalars (the ring
and its fraction field).  Everything here is pure.
"""

from __future__ import annotations

import math
import os
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

Rational = Union[int, Fraction]

DEFAULT_FACTOR_CAP = 10**9


class UnfactoredResidue(ArithmeticError):
    """Raised when a cofactor exceeds the trial-division cap and is not provably prime."""

    def __init__(self, n: int, residue: int, cap: int):
        super().__init__(f"cannot factor {n}: residue {residue} exceeds factor cap {cap}")
        self.n = n
        self.residue = residue
        self.cap = cap


def factor_cap() -> int:
    raw = os.environ.get("EISENBOX_FACTOR_CAP")
    if raw is None:
        return DEFAULT_FACTOR_CAP
    return int(raw)


_prime_lock = threading.Lock()
_primes: list[int] = []
_sieved_to = 1


def _small_primes(limit: int) -> list[int]:
    """Primes <= limit; the table only ever grows and is shared read-only."""
    global _primes, _sieved_to
    if limit > _sieved_to:
        with _prime_lock:
            if limit > _sieved_to:
                sieve = bytearray([1]) * (limit + 1)
                sieve[0:2] = b"\x00\x00"
                for i in range(2, math.isqrt(limit) + 1):
                    if sieve[i]:
                        sieve[i * i :: i] = bytearray(len(range(i * i, limit + 1, i)))
                _primes = [i for i in range(limit + 1) if sieve[i]]
                _sieved_to = limit
    if limit == _sieved_to:
        return _primes
    return [p for p in _primes if p <= limit]


# deterministic for n < 3.3 * 10**24
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    if n >= 3_317_044_064_679_887_385_961_981:
        raise UnfactoredResidue(n, n, factor_cap())
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class PrimeFactorization:
    """Ordered ``(prime, multiplicity)`` pairs with strictly increasing primes."""

    factors: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        last = 1
        for p, m in self.factors:
            if p <= last or m <= 0:
                raise ValueError(f"malformed factorization {self.factors}")
            last = p

    @property
    def omega_count(self) -> int:
        """Number of prime factors counted with multiplicity."""
        return sum(m for _, m in self.factors)

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def value(self) -> int:
        out = 1
        for p, m in self.factors:
            out *= p**m
        return out

    def as_dict(self) -> dict[int, int]:
        return dict(self.factors)


def factorize(n: int, cap: int | None = None) -> PrimeFactorization:
    """Trial-division factorization of a positive integer.

    Divisors up to ``isqrt(cap)`` are tried; a cofactor that survives is
    accepted as prime when it is at most ``cap`` or passes a deterministic
    Miller-Rabin test, and otherwise :class:`UnfactoredResidue` is raised.
    """
    if not isinstance(n, int) or isinstance(n, bool):
        raise TypeError(f"expected int, got {type(n).__name__}")
    if n <= 0:
        raise ValueError(f"factorize needs n >= 1, got {n}")
    if cap is None:
        cap = factor_cap()
    out: dict[int, int] = {}
    rest = n
    bound = math.isqrt(cap)
    for p in _small_primes(max(bound, 2)):
        if p * p > rest:
            break
        if rest % p == 0:
            k = 0
            while rest % p == 0:
                rest //= p
                k += 1
            out[p] = k
    if rest > 1:
        if rest > cap and not is_prime(rest):
            raise UnfactoredResidue(n, rest, cap)
        out[rest] = out.get(rest, 0) + 1
    return PrimeFactorization(tuple(sorted(out.items())))


def _as_fraction(q: Rational) -> Fraction:
    return q if isinstance(q, Fraction) else Fraction(q)


def _int_val(n: int, p: int) -> int:
    n = abs(n)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def padic_val(q: Rational, p: int) -> int | float:
    """p-adic valuation of a rational; ``math.inf`` for zero."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    q = _as_fraction(q)
    if q == 0:
        return math.inf
    return _int_val(q.numerator, p) - _int_val(q.denominator, p)


def lcm_accumulate(values: Iterable[int]) -> int:
    out = 1
    for v in values:
        if v == 0:
            raise ValueError("lcm of zero is undefined here")
        out = math.lcm(out, abs(v))
    return out


def radical(n: int) -> int:
    out = 1
    for p in factorize(n).primes:
        out *= p
    return out


def smooth_numbers(primes: Iterable[int], bound: int) -> list[int]:
    """All integers in [1, bound] whose prime factors lie in ``primes``, sorted."""
    out = [1]
    for p in sorted(set(primes)):
        grown = []
        for v in out:
            w = v * p
            while w <= bound:
                grown.append(w)
                w *= p
        out.extend(grown)
    return sorted(out)


def ceil_frac(q: Rational) -> int:
    q = _as_fraction(q)
    return -((-q.numerator) // q.denominator)


def to_rational(text: str | int | Fraction) -> Fraction:
    """Parse ``"a/b"`` (or an int) without any float round trip."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    return Fraction(text.strip())


def rational_str(q: Rational) -> str:
    q = _as_fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"
