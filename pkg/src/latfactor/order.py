"""Multiplicative orders: bounded order computation, finding an element of
large order (or a factor), and preparing a base for the balanced searches.
"""

from dataclasses import dataclass
from math import gcd, isqrt, lcm

from .arith import int_root_ceil, int_root_floor, mod_inv, trial_factor
from .coppersmith import factor_with_congruence, rpower_divisors_congruence
from .counters import ensure
from .errors import SearchExhausted, SharedFactor
from .znpoly import eval_geometric_coeffs, product_coeffs


@dataclass(frozen=True)
class Order:
    d: int


@dataclass(frozen=True)
class ExceedsBound:
    T: int


@dataclass(frozen=True)
class FactorFound:
    g: int


@dataclass(frozen=True)
class ElementFound:
    a: int


@dataclass(frozen=True)
class RPowerFree:
    pass


@dataclass(frozen=True)
class Prime:
    pass


def order_bounded(N, a, T, counters=None):
    """Order(ord_N(a)) if it is at most T, else ExceedsBound(T).

    Baby steps a^1..a^s (s = ceil(sqrt(T))) are the roots of one product
    polynomial; it is evaluated at the giant points a^(-v s), v = 0..s-1, by
    geometric evaluation. The first giant point where the product vanishes
    mod N holds the smallest exponent u + v s with a^(u + v s) = 1.
    A non-invertible a comes back as FactorFound.
    """
    counters = ensure(counters)
    if N < 2:
        raise ValueError("N must be at least 2")
    g = gcd(a, N)
    if g != 1:
        return FactorFound(g)
    a %= N
    if T < 1:
        return ExceedsBound(T)
    if a == 1 % N:
        return Order(1)
    s = isqrt(T - 1) + 1
    babies = {}
    x = 1
    for u in range(1, s + 1):
        x = x * a % N
        babies.setdefault(x, u)
    counters.baby_steps += s
    f = product_coeffs(list(babies), N)
    giant = pow(mod_inv(a, N), s, N)
    values = eval_geometric_coeffs(f, giant, s, N)
    counters.giant_steps += s
    point = 1
    for v, y in enumerate(values):
        # a zero can also come from separate factors vanishing mod p and q
        if y == 0 and point in babies:
            d = v * s + babies[point]
            return Order(d) if d <= T else ExceedsBound(T)
        point = point * giant % N
    return ExceedsBound(T)


def _handoff(N, r, M, counters):
    # Every prime p | N satisfies p = 1 (mod M) once the order splits fail.
    try:
        found = rpower_divisors_congruence(N, r, 1, M, counters)
    except SharedFactor as exc:
        return FactorFound(exc.g) if exc.g < N else RPowerFree()
    proper = [p for p in found if 1 < p < N]
    if proper:
        return FactorFound(proper[0])
    if r == 1 and N in found:
        return Prime()
    return RPowerFree()


def order_find_or_factor(N, r, delta, counters=None):
    """ElementFound(a) with ord_N(a) > delta, FactorFound(g), RPowerFree or Prime.

    Stage one bounds the order by T1 = sqrt(delta)/log^2 N and stage two by
    delta itself; orders found are folded into M by lcm, and each order is
    split prime by prime to expose a factor. Once M reaches T1 every prime
    divisor of N is 1 mod M and the r-power divisor sweep finishes the job.
    Stage one is skipped when T1 < 1, which happens for every N at desk
    scale with a small delta.
    """
    counters = ensure(counters)
    if N < 2:
        raise ValueError("N must be at least 2")
    delta = min(delta, N)
    L = N.bit_length()
    T1 = int_root_floor(delta, L ** 4, 1, 2)
    M = 1
    a = 2
    while True:
        while N % a and pow(a, M, N) == 1:
            a += 1
        if N % a == 0:
            return Prime() if a == N else FactorFound(a)
        found = order_bounded(N, a, T1, counters) if T1 >= 1 else ExceedsBound(T1)
        if isinstance(found, ExceedsBound):
            found = order_bounded(N, a, delta, counters)
            if isinstance(found, ExceedsBound):
                return ElementFound(a)
        if isinstance(found, FactorFound):
            return found
        m_e = found.d
        for ell, _ in trial_factor(m_e):
            counters.gcd_calls += 1
            g = gcd(N, pow(a, m_e // ell, N) - 1)
            if g != 1:
                return FactorFound(g)
        M = lcm(M, m_e)
        if M >= T1:
            return _handoff(N, r, M, counters)
        a += 1


def _scan_block(N, alpha, beta, m_factors, start, n, counters):
    """Localize the first index in start+1..start+n with a nontrivial gcd."""
    x = pow(beta, start, N)
    for j in range(1, n + 1):
        x = x * beta % N
        counters.gcd_calls += 1
        g = gcd(x - 1, N)
        if g == 1:
            continue
        if g != N:
            return FactorFound(g)
        # alpha^(m^2 (start + j)) = 1: strip primes of m^2 to reach the order
        order = (start + j) * _prod(m_factors) ** 2
        for ell, _ in m_factors:
            while order % ell == 0 and pow(alpha, order // ell, N) == 1:
                order //= ell
        for ell, _ in m_factors:
            if order % ell == 0:
                counters.gcd_calls += 1
                g = gcd(pow(alpha, order // ell, N) - 1, N)
                if g not in (1, N):
                    return FactorFound(g)
        # Both primes share the order, so both are 1 mod it.
        try:
            primes = factor_with_congruence(N, 1, order, counters)
        except SharedFactor as exc:
            return FactorFound(exc.g)
        proper = [p for p in primes if p < N]
        if proper:
            return FactorFound(proper[0])
        raise SearchExhausted(
            "order localized but no factor recovered",
            {"N": N, "alpha": alpha, "order": order},
        )
    return None


def _prod(factors):
    out = 1
    for p, e in factors:
        out *= p ** e
    return out


def find_alpha(N, k, m, m_factorization=None, counters=None):
    """A base alpha with gcd(alpha^(m^2 i) - 1, N) = 1 for all i in 1..k.

    Returns ElementFound(alpha), FactorFound(g) or Prime(). An element of
    order above N^(1/3) is found first; then with beta = alpha^(m^2) and
    n = ceil(sqrt(k)), the product of (x - beta^-t), t = 1..n, evaluated at
    beta^(i n) tests the whole block i n + 1 .. i n + n with one gcd.
    """
    counters = ensure(counters)
    g = gcd(m, N)
    if g != 1:
        if g == N:
            raise ValueError("m is a multiple of N")
        return FactorFound(g)
    if m_factorization is None:
        m_factorization = trial_factor(m)
    D = int_root_ceil(N, 1, 1, 3)
    start = order_find_or_factor(N, 1, D, counters)
    if not isinstance(start, ElementFound):
        if isinstance(start, RPowerFree):
            raise SearchExhausted("order finding gave no element", {"N": N})
        return start
    alpha = start.a
    beta = pow(alpha, m * m, N)
    n = isqrt(k - 1) + 1 if k > 1 else 1
    beta_inv = mod_inv(beta, N)
    roots = []
    x = 1
    for _ in range(n):
        x = x * beta_inv % N
        roots.append(x)
    f = product_coeffs(roots, N)
    values = eval_geometric_coeffs(f, pow(beta, n, N), n, N)
    for i, y in enumerate(values):
        counters.gcd_calls += 1
        g = gcd(y, N)
        if g == 1:
            continue
        if g != N:
            return FactorFound(g)
        hit = _scan_block(N, alpha, beta, m_factorization, i * n, n, counters)
        if hit is not None:
            return hit
    return ElementFound(alpha)


def is_certified_order(N, a, d):
    """a^d = 1 and a^(d/l) != 1 for every prime l | d."""
    if pow(a, d, N) != 1:
        return False
    return all(pow(a, d // ell, N) != 1 for ell, _ in trial_factor(d))
