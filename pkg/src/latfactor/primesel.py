"""Squarefree moduli built from small primes, and coprime adjustment."""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, prod

from .arith import det_prime_test, primes_up_to


@dataclass(frozen=True)
class PrimeProduct:
    m: int
    primes: tuple
    phi_m: int

    @property
    def ratio(self):
        """phi(m)/m as an exact fraction."""
        return Fraction(self.phi_m, self.m)


def _first_primes_past(x):
    """The shortest prefix of the primes whose product exceeds x."""
    limit = 16
    while True:
        chosen, acc = [], 1
        for p in primes_up_to(limit):
            chosen.append(p)
            acc *= p
            if acc > x:
                return chosen, acc
        limit *= 2


def prime_product(x):
    """A squarefree m with x/2 < m < 2x whose support is the first few primes.

    Take the first primorial P > x, set t = P // x and drop the smallest
    prime above t from P.
    """
    if x < 3:
        raise ValueError("x must be at least 3")
    chosen, primorial = _first_primes_past(x)
    t = primorial // x
    drop = t + 1
    while not det_prime_test(drop):
        drop += 1
    support = tuple(p for p in chosen if p != drop)
    m = primorial // drop
    return PrimeProduct(m=m, primes=support, phi_m=prod(p - 1 for p in support))


def coprime_shift(m0, n):
    """Smallest m >= m0 with gcd(m, n) = 1."""
    if m0 < 1 or n < 1:
        raise ValueError("m0 and n must be positive")
    m = m0
    while gcd(m, n) != 1:
        m += 1
    return m
