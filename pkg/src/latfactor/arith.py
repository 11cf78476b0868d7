"""Exact integer and modular arithmetic primitives."""

from math import gcd, isqrt

from .errors import NotInvertible, UnsupportedSize

# Trial division handles B up to this bound; beyond it the Pollard-Strassen
# stage takes over.
TRIAL_LIMIT = 1 << 12

# Miller-Rabin with these bases is deterministic for every n < 2**64.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_LIMIT = 1 << 64


def mod_pow(base, exp, modulus):
    """base**exp mod modulus. Negative exponents use the inverse base."""
    if modulus < 2:
        raise ValueError("modulus must be at least 2")
    if exp < 0:
        return pow(mod_inv(base, modulus), -exp, modulus)
    return pow(base, exp, modulus)


def ext_gcd(x, y):
    """Return (g, u, v) with g = gcd(x, y) and u*x + v*y = g."""
    if x == 0 and y == 0:
        raise ValueError("ext_gcd(0, 0) is undefined")
    r0, r1 = x, y
    u0, u1 = 1, 0
    v0, v1 = 0, 1
    while r1:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        u0, u1 = u1, u0 - q * u1
        v0, v1 = v1, v0 - q * v1
    return r0, u0, v0


def mod_inv(x, modulus):
    """Inverse of x modulo `modulus`; raises NotInvertible(g) on a shared factor."""
    g = gcd(x, modulus)
    if g != 1:
        raise NotInvertible(g)
    return pow(x, -1, modulus)


def iroot(x, k):
    """Largest integer r with r**k <= x."""
    if x < 0:
        raise ValueError("iroot of a negative number")
    if k == 1 or x < 2:
        return x
    if k == 2:
        return isqrt(x)
    # Newton from an overestimate; the iterates decrease monotonically.
    r = 1 << -(-x.bit_length() // k)
    while True:
        nxt = ((k - 1) * r + x // r ** (k - 1)) // k
        if nxt >= r:
            break
        r = nxt
    while r ** k > x:
        r -= 1
    while (r + 1) ** k <= x:
        r += 1
    return r


def int_root_floor(x, y, u, v):
    """floor((x/y)**(u/v)) computed exactly."""
    if y < 1 or v < 1:
        raise ValueError("need y >= 1 and v >= 1")
    return iroot(x ** u // y ** u, v)


def int_root_ceil(x, y, u, v):
    """ceil((x/y)**(u/v)) computed exactly."""
    r = int_root_floor(x, y, u, v)
    if r ** v * y ** u == x ** u:
        return r
    return r + 1


def log2_surrogate(n):
    """Bit length, used wherever a formula calls for log2 n."""
    return n.bit_length()


def loglog2_surrogate(n):
    return n.bit_length().bit_length()


def det_prime_test(n):
    """Deterministic primality for n < 2**64."""
    if n < 2:
        return False
    if n >= _MR_LIMIT:
        raise UnsupportedSize(f"{n} exceeds the deterministic witness range 2^64")
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def is_prime(n):
    """det_prime_test below 2^64; above it, GMP's strong probable-prime test
    with 50 rounds."""
    if n < _MR_LIMIT:
        return det_prime_test(n)
    import gmpy2

    return bool(gmpy2.is_prime(n, 50))


def primes_up_to(limit):
    """Sieve of Eratosthenes."""
    if limit < 2:
        return []
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p::p] = bytearray(len(range(p * p, limit + 1, p)))
    return [i for i, flag in enumerate(sieve) if flag]


def trial_factor(n):
    """Full factorization of a small n by trial division, as [(p, e), ...]."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


def _strip(n, p):
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return n, e


def small_factor_sweep(N, B):
    """Remove every prime <= B from N.

    Returns (factors, cofactor) where factors lists (p, multiplicity) in
    ascending order and cofactor has no prime factor <= B.
    """
    if B < 2:
        raise ValueError("B must be at least 2")
    factors = []
    for p in primes_up_to(min(B, TRIAL_LIMIT)):
        if p * p > N:
            break
        N, e = _strip(N, p)
        if e:
            factors.append((p, e))
    else:
        if B > TRIAL_LIMIT and N > 1:
            from .strassen import pollard_strassen_sweep

            more, N = pollard_strassen_sweep(N, TRIAL_LIMIT + 1, B)
            factors.extend(more)
            return factors, N
    # Reaching here after a break means N is 1 or prime.
    if 1 < N <= B:
        factors.append((N, 1))
        N = 1
    return factors, N
