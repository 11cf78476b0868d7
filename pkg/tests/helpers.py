"""Independent oracles shared by the tests.

Nothing here calls into the package: these are the slow, obvious versions
the fast code is checked against.
"""

from math import gcd, isqrt


def is_prime_naive(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def sieve(limit):
    flags = bytearray([1]) * (limit + 1)
    flags[0:2] = b"\x00\x00"
    for p in range(2, isqrt(limit) + 1):
        if flags[p]:
            flags[p * p::p] = bytearray(len(flags[p * p::p]))
    return [p for p in range(limit + 1) if flags[p]]


def _miller_rabin(n, bases=(2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)):
    # Independent copy for generating instances quickly.
    if n < 2:
        return False
    for p in bases:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in bases:
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


def random_prime(rng, bits):
    while True:
        p = rng.getrandbits(bits) | (1 << (bits - 1)) | 1
        if _miller_rabin(p):
            return p


def random_prime_in(rng, lo, hi):
    while True:
        p = rng.randrange(lo, hi)
        if _miller_rabin(p):
            return p


def trial_factorization(n):
    out = []
    f = 2
    while f * f <= n:
        e = 0
        while n % f == 0:
            n //= f
            e += 1
        if e:
            out.append((f, e))
        f += 1 if f == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


def naive_order(n, a):
    """Smallest d >= 1 with a^d = 1 mod n, by sequential powering."""
    x = a % n
    d = 1
    while x != 1:
        x = x * a % n
        d += 1
    return d


def naive_product(points, n):
    """Coefficients of prod (x - v), low to high, by repeated linear multiplication."""
    coeffs = [1]
    for v in points:
        nxt = [0] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            nxt[i + 1] = (nxt[i + 1] + c) % n
            nxt[i] = (nxt[i] - v * c) % n
        coeffs = nxt
    return coeffs


def horner(coeffs, x, n):
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * x + c) % n
    return acc


def brute_collision(N, kappa, gamma, vs):
    """First (i, h) in order with a proper gcd(N, gamma^i - v_h), as (g, N // g)."""
    x = 1
    for _ in range(kappa):
        for v in vs:
            g = gcd(N, x - v)
            if 1 < g < N:
                return g, N // g
        x = x * gamma % N
    return None


def brute_collision_factors(N, kappa, gamma, vs):
    """Every proper factor exposed by some pair (i, h)."""
    found = set()
    x = 1
    for _ in range(kappa):
        for v in vs:
            g = gcd(N, x - v)
            if 1 < g < N:
                found.add(g)
        x = x * gamma % N
    return found


def carmichael(n):
    """lambda(n) from the trial factorization."""
    from math import lcm

    out = 1
    for p, e in trial_factorization(n):
        if p == 2 and e >= 3:
            part = 2 ** (e - 2)
        else:
            part = (p - 1) * p ** (e - 1)
        out = lcm(out, part)
    return out


def order_by_reduction(n, a, lam=None):
    """Order of a unit a mod n: strip primes from lambda(n) while a^d stays 1."""
    if n == 1:
        return 1
    d = carmichael(n) if lam is None else lam
    for p, _ in trial_factorization(d):
        while d % p == 0 and pow(a, d // p, n) == 1:
            d //= p
    return d
