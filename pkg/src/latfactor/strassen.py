"""Pollard-Strassen sweep: remove all primes in a range using block products."""

from math import gcd, isqrt

from .znpoly import multipoint_eval, product_coeffs


def pollard_strassen_sweep(N, lo, hi):
    """Strip every prime in [lo, hi] from N, assuming N has none below lo.

    The integers in [lo, hi] are split into blocks of length s; the product of
    each block mod N is f(lo + b*s) for f(x) = x(x+1)...(x+s-1), obtained for
    all blocks at once by multipoint evaluation. Only blocks whose product
    shares a factor with N are scanned.
    """
    factors = []
    if N < 2 or hi < lo:
        return factors, N
    top = min(hi, isqrt(N))
    if top >= lo:
        s = max(1, isqrt(top - lo + 1))
        n_blocks = (top - lo) // s + 1
        f = product_coeffs([(-t) % N for t in range(s)], N)
        starts = [lo + b * s for b in range(n_blocks)]
        values = multipoint_eval(f, starts, N)
        for start, v in zip(starts, values):
            if start * start > N:
                break
            if gcd(v % N, N) == 1:
                continue
            for t in range(start, min(start + s, hi + 1)):
                if N % t == 0:
                    e = 0
                    while N % t == 0:
                        N //= t
                        e += 1
                    factors.append((t, e))
    # Whatever is left has no factor up to its square root.
    if 1 < N <= hi:
        factors.append((N, 1))
        N = 1
    return factors, N
